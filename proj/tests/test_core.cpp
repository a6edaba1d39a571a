#include "doctest.h"

#include "alteach/problem.hpp"
#include "support.hpp"

using namespace alteach;

TEST_CASE("coverage sets on P0") {
  const auto p = testing::p0();
  CHECK(coverage_set(p, 0) == std::vector<Index>{1, 3});
  CHECK(coverage_set(p, 1) == std::vector<Index>{2, 3});
  CHECK(coverage_set(p, 2) == std::vector<Index>{3});
  for (Index x = 0; x < p.instance_count(); ++x) CHECK_FALSE(p.coverage(x).test(p.target()));
}

TEST_CASE("coverage sets agree with row comparison") {
  const auto p = testing::p0();
  for (Index x = 0; x < p.instance_count(); ++x) {
    for (Index h = 0; h < p.hypothesis_count(); ++h) {
      CHECK(p.coverage(x).test(h) == (p.label(h, x) != p.target_label(x)));
    }
  }
}

TEST_CASE("version space updates") {
  const auto p = testing::p0();
  auto vs = update_version_space(VersionSpace::full(p), p, 0);
  CHECK(vs.members().indices() == std::vector<std::size_t>{0, 2});
  vs = update_version_space(vs, p, 1);
  CHECK(vs.members().indices() == std::vector<std::size_t>{0});
  CHECK(update_version_space(vs, p, 2) == vs);
}

TEST_CASE("version space update is order independent") {
  const auto p = testing::p0();
  std::vector<Index> seq{2, 0, 1};
  std::sort(seq.begin(), seq.end());
  std::optional<VersionSpace> first;
  do {
    auto vs = VersionSpace::full(p);
    for (Index x : seq) vs = update_version_space(vs, p, x);
    if (!first) first = vs;
    CHECK(vs == *first);
  } while (std::next_permutation(seq.begin(), seq.end()));
}

TEST_CASE("objective f") {
  const auto p = testing::p0();
  CHECK(objective_f(p, {}, {}) == 0);
  const std::vector<Index> q{0}, t{1};
  CHECK(objective_f(p, t, q) == 3);
  const std::vector<Index> all{0, 1, 2};
  CHECK(objective_f(p, all, {}) == p.hypothesis_count() - 1);
  // f + |vs| = |H|
  const std::vector<Index> one{2};
  CHECK(objective_f(p, one, {}) + testing::survivors(p, one).size() == p.hypothesis_count());
}

TEST_CASE("preflight") {
  CHECK_FALSE(preflight_teachable(testing::p0()));
  const TeachingProblem dup(testing::rows({{1, 1}, {-1, 1}, {1, -1}, {-1, 1}}), 0);
  const auto d = preflight_teachable(dup);
  REQUIRE(d);
  CHECK(d->first == 1);
  CHECK(d->second == 3);
  CHECK_THROWS_AS(require_teachable(dup), Error);
  CHECK_FALSE(preflight_teachable(TeachingProblem(testing::rows({{1, -1}}), 0)));
}

TEST_CASE("construction validation") {
  CHECK_THROWS_AS(TeachingProblem(testing::rows({{1, 0}}), 0), Error);
  CHECK_THROWS_AS(TeachingProblem(testing::rows({{1, 1}}), 1), Error);
  FeatureMatrix f(3, 2);
  f.setZero();
  CHECK_THROWS_AS(TeachingProblem(testing::rows({{1, 1}}), 0, f), Error);
  CHECK_THROWS(testing::p0().check_instance(3));
}

TEST_CASE("restricted problems keep the target") {
  const auto p = testing::p0();
  Bitset rows(4);
  rows.set(0);
  rows.set(2);
  rows.set(3);
  const auto r = p.restricted(rows);
  CHECK(r.hypothesis_count() == 3);
  CHECK(r.target() == 0);
  CHECK(r.label(1, 1) == -1);
  Bitset without_target(4);
  without_target.set(1);
  without_target.set(2);
  CHECK_THROWS_AS(p.restricted(without_target), Error);
}

TEST_CASE("bitset algebra") {
  Bitset a(130), b(130);
  a.set(0);
  a.set(64);
  a.set(129);
  b.set(64);
  b.set(100);
  CHECK(a.count() == 3);
  CHECK((a & b).indices() == std::vector<std::size_t>{64});
  CHECK((a | b).count() == 4);
  CHECK((a - b).indices() == std::vector<std::size_t>{0, 129});
  Bitset c(130);
  c.set(100);
  CHECK(a.count_and(b) == 1);
  CHECK(a.count_and_or(b, c) == 1);
  CHECK(b.count_and_or(a, c) == 2);
  CHECK(Bitset(130, true).count() == 130);
  CHECK(Bitset(130).first() == 130);
  CHECK((a - a).none());
}

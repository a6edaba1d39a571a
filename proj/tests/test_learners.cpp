#include "doctest.h"

#include <set>

#include "alteach/learners.hpp"
#include "support.hpp"

using namespace alteach;

TEST_CASE("GBS utility") {
  const auto p = testing::p0();
  const Bitset all(4, true);
  CHECK(gbs_utility(p, all, 0) == doctest::Approx(2.0));
  CHECK(gbs_utility(p, all, 1) == doctest::Approx(2.0));
  CHECK(gbs_utility(p, all, 2) == doctest::Approx(1.5));
  Bitset agree(4);
  agree.set(0);
  agree.set(1);
  CHECK(gbs_utility(p, agree, 2) == doctest::Approx(0.0));
  CHECK_THROWS_AS(gbs_utility(p, Bitset(4), 0), Error);
}

TEST_CASE("utility is invariant under flipping an instance column") {
  auto l = testing::p0().labels();
  l.col(1) *= -1;
  const TeachingProblem flipped(l, 0);
  const Bitset all(4, true);
  for (Index x = 0; x < 3; ++x) CHECK(gbs_utility(flipped, all, x) == gbs_utility(testing::p0(), all, x));
}

TEST_CASE("GBS query selection") {
  const auto p = testing::p0();
  const Bitset all(4, true);
  CHECK(select_query(LearnerSpec::gbs(), p, all, Bitset(3)) == 0);
  Bitset q(3);
  q.set(0);
  CHECK(select_query(LearnerSpec::gbs(), p, all, q) == 1);
  CHECK_THROWS_AS(select_query(LearnerSpec::gbs(), p, all, Bitset(3, true)), Error);
}

TEST_CASE("GBS with zero utility everywhere picks the lowest open index") {
  const auto p = testing::p0();
  Bitset just_target(4);
  just_target.set(0);
  Bitset q(3);
  q.set(0);
  CHECK(select_query(LearnerSpec::gbs(), p, just_target, q) == 1);
}

TEST_CASE("beta-greedy respects the utility threshold and is deterministic") {
  const auto p = testing::p0();
  const Bitset all(4, true);
  for (double beta : {1.0, 1.2, 2.0, 1e6}) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto spec = LearnerSpec::beta_greedy(beta, seed);
      const Index x = select_query(spec, p, all, Bitset(3));
      CHECK(beta * gbs_utility(p, all, x) >= 2.0 - 1e-12);
      CHECK(select_query(spec, p, all, Bitset(3)) == x);
    }
  }
}

TEST_CASE("beta = 1 with a unique maximizer ignores the seed") {
  const TeachingProblem p(testing::rows({{1, 1, 1}, {1, -1, 1}, {-1, -1, 1}, {1, 1, -1}}), 0);
  const Bitset all(4, true);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CHECK(select_query(LearnerSpec::beta_greedy(1.0, seed), p, all, Bitset(3)) ==
          select_query(LearnerSpec::gbs(), p, all, Bitset(3)));
  }
}

TEST_CASE("huge beta reaches every open instance") {
  const auto p = testing::p0();
  const Bitset all(4, true);
  std::set<Index> seen;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    seen.insert(select_query(LearnerSpec::beta_greedy(1e9, seed), p, all, Bitset(3)));
  }
  CHECK(seen.size() == 3);
}

TEST_CASE("random learner never re-queries") {
  const auto p = testing::p0();
  const Bitset all(4, true);
  Bitset q(3);
  q.set(1);
  for (std::uint64_t seed = 0; seed < 50; ++seed) CHECK(select_query(LearnerSpec::random(seed), p, all, q) != 1);
}

TEST_CASE("learner spec validation and names") {
  CHECK_THROWS_AS(LearnerSpec::beta_greedy(0.5, 0).validate(), Error);
  CHECK(learner_kind_from_string(to_string(LearnerKind::BetaGreedy)) == LearnerKind::BetaGreedy);
  CHECK_THROWS_AS(learner_kind_from_string("oracle"), Error);
}

#include "doctest.h"

#include "alteach/teaching.hpp"
#include "support.hpp"

using namespace alteach;

namespace {

TeachingProblem collinear() {
  // Target labels (+,+,-,-,-) at positions 0..4.
  FeatureMatrix f(5, 1);
  f << 0, 1, 2, 3, 4;
  return TeachingProblem(testing::rows({{1, 1, -1, -1, -1}, {-1, 1, -1, -1, -1}, {1, 1, 1, -1, -1}}), 0, f);
}

}  // namespace

TEST_CASE("constrained sets") {
  const auto p = testing::p0();
  CHECK(constrained_set(ConstraintSpec::unconstrained(), p, 0) == std::vector<Index>{1, 2});
  const auto c = collinear();
  CHECK(constrained_set(ConstraintSpec::close_opposite(0.4), c, 1) == std::vector<Index>{2, 3});
  CHECK(constrained_set(ConstraintSpec::close_opposite(1.0), c, 1) == std::vector<Index>{2, 3, 4});
  CHECK(constrained_set(ConstraintSpec::far_same(1.0), c, 1) == std::vector<Index>{0});
  CHECK(constrained_set(ConstraintSpec::far_same(0.5), c, 2) == std::vector<Index>{4});
  CHECK(constrained_set(ConstraintSpec::close_or_far(0.4), c, 1) == std::vector<Index>{0, 2, 3});
  CHECK(constrained_set(ConstraintSpec::neighbor_chain(1), c, 0) == std::vector<Index>{1});
  CHECK(constrained_set(ConstraintSpec::neighbor_chain(2), c, 2) == std::vector<Index>{0, 1, 3, 4});
  for (double psi : {0.01, 0.1, 0.5}) CHECK(constrained_set(ConstraintSpec::close_opposite(psi), c, 1).size() >= 1);
}

TEST_CASE("distance ties go to the lower index") {
  FeatureMatrix f(4, 1);
  f << 0, -1, 1, 5;
  const TeachingProblem p(testing::rows({{1, -1, -1, -1}, {-1, -1, -1, -1}}), 0, f);
  CHECK(constrained_set(ConstraintSpec::close_opposite(0.34), p, 0) == std::vector<Index>{1, 2});
  CHECK(constrained_set(ConstraintSpec::close_opposite(0.3), p, 0) == std::vector<Index>{1});
}

TEST_CASE("feature constraints need features") {
  CHECK_THROWS_AS(constrained_set(ConstraintSpec::close_opposite(0.5), testing::p0(), 0), Error);
  CHECK_THROWS_AS(ConstraintSpec::close_opposite(0.0).validate(), Error);
  CHECK_THROWS_AS(ConstraintSpec::far_same(1.5).validate(), Error);
  CHECK(constraint_kind_from_string("C+F") == ConstraintKind::CloseOppositeOrFarSame);
}

TEST_CASE("marginal gain and greedy pick on P0") {
  const auto p = testing::p0();
  const Bitset all(4, true);
  CHECK(marginal_gain(p, all, 0, 1) == 3);
  CHECK(marginal_gain(p, all, 0, 2) == 2);
  const std::vector<Index> cands{1, 2};
  const auto pick = greedy_pick(p, all, 0, cands);
  REQUIRE(pick.pick);
  CHECK(*pick.pick == 1);
  CHECK(pick.gain == 3);
  CHECK(pick.best_constrained_gain == pick.best_unconstrained_gain);

  const auto none = greedy_pick(p, all, 0, {});
  CHECK_FALSE(none.pick);
  CHECK(none.gain == 2);

  const std::vector<double> costs{1.0, 10.0, 1.0};
  const auto cheap = greedy_pick(p, all, 0, cands, costs);
  REQUIRE(cheap.pick);
  CHECK(*cheap.pick == 2);
}

TEST_CASE("greedy pick dominates every candidate") {
  const auto p = testing::p0();
  Bitset vs(4, true);
  vs.reset(3);
  for (Index q = 0; q < 3; ++q) {
    const auto cands = constrained_set(ConstraintSpec::unconstrained(), p, q);
    const auto pick = greedy_pick(p, vs, q, cands);
    for (Index c : cands) CHECK(pick.gain >= marginal_gain(p, vs, q, c));
  }
}

TEST_CASE("sessions on P0") {
  const auto p = testing::p0();
  const auto taught = run_session(p, LearnerSpec::gbs(), ConstraintSpec::unconstrained());
  CHECK(taught.terminated);
  REQUIRE(taught.rounds.size() == 1);
  CHECK(taught.rounds[0].query.instance == 0);
  REQUIRE(taught.rounds[0].contrastive);
  CHECK(taught.rounds[0].contrastive->instance == 1);
  CHECK(taught.total_examples == 2);
  CHECK(cost_of(taught) == 2.0);
  const std::vector<double> costs{1.0, 2.0, 3.0};
  CHECK(cost_of(taught, costs) == 3.0);

  SessionOptions alone;
  alone.with_teacher = false;
  const auto solo = run_session(p, LearnerSpec::gbs(), ConstraintSpec::unconstrained(), alone);
  CHECK(solo.terminated);
  REQUIRE(solo.rounds.size() == 2);
  CHECK(solo.rounds[0].query.instance == 0);
  CHECK(solo.rounds[1].query.instance == 1);
  CHECK(solo.total_examples == 2);
  CHECK(cost_of(solo) == 2.0);
}

TEST_CASE("budget truncation is reported, not thrown") {
  const auto p = testing::p0();
  SessionOptions opts;
  opts.budget = 1;
  opts.with_teacher = false;
  const auto tr = run_session(p, LearnerSpec::gbs(), ConstraintSpec::unconstrained(), opts);
  CHECK_FALSE(tr.terminated);
  CHECK(tr.rounds.size() == 1);
}

TEST_CASE("transcript invariants under every learner and constraint") {
  const auto c = collinear();
  for (const auto& spec : {ConstraintSpec::unconstrained(), ConstraintSpec::close_opposite(0.3),
                           ConstraintSpec::far_same(0.5), ConstraintSpec::neighbor_chain(1)}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto tr = run_session(c, LearnerSpec::beta_greedy(3.0, seed), spec);
      std::size_t prev = c.hypothesis_count(), examples = 0;
      for (const auto& r : tr.rounds) {
        CHECK(r.vs_size_after >= 1);
        CHECK(r.vs_size_after <= prev);
        CHECK(r.best_constrained_gain <= r.best_unconstrained_gain);
        if (spec.kind == ConstraintKind::Unconstrained) CHECK(r.best_constrained_gain == r.best_unconstrained_gain);
        prev = r.vs_size_after;
        examples += r.contrastive ? 2 : 1;
      }
      CHECK(tr.total_examples == examples);
      CHECK(tr.terminated == (tr.rounds.back().vs_size_after == 1));
      CHECK(run_session(c, LearnerSpec::beta_greedy(3.0, seed), spec) == tr);
    }
  }
}

TEST_CASE("replay reproduces a greedy run") {
  const auto c = collinear();
  const auto tr = run_session(c, LearnerSpec::gbs(), ConstraintSpec::unconstrained());
  TeachingSequence steps;
  for (const auto& r : tr.rounds) steps.push_back(r.contrastive ? TeachingStep(r.contrastive->instance) : std::nullopt);
  const auto again = replay_session(c, LearnerSpec::gbs(), steps);
  CHECK(again.total_examples == tr.total_examples);
  CHECK(again.terminated);
}

#include "doctest.h"

#include "alteach/data.hpp"
#include "alteach/oracles.hpp"
#include "alteach/rng.hpp"
#include "alteach/verify.hpp"
#include "support.hpp"

using namespace alteach;

TEST_CASE("teaching dimension on small cases") {
  const auto p = testing::p0();
  const auto r = teaching_dimension(p);
  CHECK(r.value == 2);
  CHECK(testing::survivors(p, {r.witness[0].instance, r.witness[1].instance}).size() == 1);
  CHECK(teaching_dimension(TeachingProblem(testing::rows({{1, 1}}), 0)).value == 0);
  CHECK(teaching_dimension(TeachingProblem(testing::rows({{1, 1, 1}, {-1, 1, 1}, {-1, -1, 1}}), 0)).value == 1);
}

TEST_CASE("teaching dimension matches subset enumeration") {
  for (std::uint64_t s = 0; s < 60; ++s) {
    const auto p = random_small_problem(s, 7, 12);
    CHECK(teaching_dimension(p).value == testing::brute_teaching_dimension(p));
  }
}

TEST_CASE("exact oracles refuse oversized problems") {
  OracleLimits tight;
  tight.max_instances = 2;
  CHECK_THROWS_AS(teaching_dimension(testing::p0(), tight), Error);
  CHECK_THROWS_AS(opt_teaching_with_learner(testing::p0(), LearnerSpec::gbs(), ConstraintSpec::unconstrained(), tight),
                  Error);
}

TEST_CASE("interactive optimum on P0") {
  const auto r = opt_teaching_with_learner(testing::p0(), LearnerSpec::gbs(), ConstraintSpec::unconstrained());
  CHECK(r.value == 2);
  CHECK(r.witness.size() == 2);
}

TEST_CASE("interactive optimum matches plain game-tree recursion") {
  for (std::uint64_t s = 0; s < 60; ++s) {
    const auto p = random_small_problem(mix_seed(s, 99), 5, 10);
    for (const auto& learner : {LearnerSpec::gbs(), LearnerSpec::beta_greedy(4.0, s)}) {
      const auto r = opt_teaching_with_learner(p, learner, ConstraintSpec::unconstrained());
      CHECK(r.value == testing::brute_opt_interactive(p, learner));
      const auto replay = replay_session(p, learner, r.steps);
      CHECK(replay.terminated);
      CHECK(replay.total_examples == r.value);
      CHECK(r.witness.size() == r.value);
    }
  }
}

TEST_CASE("sandwich and dominance over greedy") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto p = random_small_problem(mix_seed(s, 7), 8, 12);
    const auto t = teaching_dimension(p).value;
    const auto tal = opt_teaching_with_learner(p, LearnerSpec::gbs(), ConstraintSpec::unconstrained()).value;
    CHECK(t <= tal);
    CHECK(tal <= 2 * t);
    const auto greedy = run_session(p, LearnerSpec::gbs(), ConstraintSpec::unconstrained());
    CHECK(tal <= greedy.total_examples);
    SessionOptions alone;
    alone.with_teacher = false;
    CHECK(tal <= 2 * run_session(p, LearnerSpec::gbs(), ConstraintSpec::unconstrained(), alone).rounds.size());
  }
}

TEST_CASE("constrained optimum is never below the unconstrained one") {
  const auto fam = thm2_family(1);
  OracleLimits limits;
  limits.max_instances = fam.n;
  const auto free = opt_teaching_with_learner(fam.problem, LearnerSpec::gbs(), ConstraintSpec::unconstrained(), limits);
  CHECK(free.value == 2);
  const auto chained = opt_teaching_with_learner(fam.problem, LearnerSpec::gbs(), fam.constraint, limits);
  CHECK(chained.value >= free.value);
  const auto greedy = run_session(fam.problem, LearnerSpec::gbs(), fam.constraint);
  CHECK(chained.value <= greedy.total_examples);
}

TEST_CASE("counterexample search is deterministic and finds AL-alone beating the teacher") {
  const auto a = search_gbs_counterexample(counterexample_search_config());
  const auto b = search_gbs_counterexample(counterexample_search_config());
  REQUIRE(a.problem);
  REQUIRE(b.problem);
  CHECK(a.problem->labels() == b.problem->labels());
  CHECK(a.alone.total_examples == 3);
  CHECK(a.with_teacher.total_examples == 4);
  CHECK_FALSE(preflight_teachable(*a.problem));

  CounterexampleSearch hopeless;
  hopeless.max_instances = 2;
  hopeless.max_hypotheses = 3;
  hopeless.max_tries = 50;
  hopeless.required_costs = std::make_pair(std::size_t{3}, std::size_t{4});  // two instances cap AL-alone at 2
  const auto none = search_gbs_counterexample(hopeless);
  CHECK_FALSE(none.problem);
  CHECK(none.tries == 50);
}

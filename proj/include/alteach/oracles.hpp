#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "alteach/learners.hpp"
#include "alteach/problem.hpp"
#include "alteach/teaching.hpp"

namespace alteach {

struct OracleLimits {
  std::size_t max_instances = 20;
  std::size_t max_states = 2'000'000;
};

struct OptResult {
  std::size_t value = 0;
  /// Labeled examples in the order they are revealed.
  std::vector<Example> witness;
  /// Teacher choice per round (interactive oracle only); replays to `value`.
  TeachingSequence steps;
  std::size_t explored_states = 0;
};

/// OPT^T: minimum set cover of H \ {target} by coverage sets.
OptResult teaching_dimension(const TeachingProblem& problem, const OracleLimits& limits = {});

/// Minimum total labels over all teacher strategies against a fixed learner.
/// The teacher may stay silent in a round. Unconstrained gives OPT^{T+AL}.
OptResult opt_teaching_with_learner(const TeachingProblem& problem, const LearnerSpec& learner,
                                    const ConstraintSpec& constraint, const OracleLimits& limits = {});

struct CounterexampleSearch {
  std::size_t max_instances = 6;
  std::size_t max_hypotheses = 8;
  std::uint64_t seed = 1;
  std::size_t max_tries = 200'000;
  /// When set, only accept instances with exactly these (alone, with teacher) label totals.
  std::optional<std::pair<std::size_t, std::size_t>> required_costs;
};

struct CounterexampleResult {
  std::optional<TeachingProblem> problem;
  Transcript alone;
  Transcript with_teacher;
  std::size_t tries = 0;
};

/// Random search for a problem where GBS alone uses fewer labels than GBS
/// with the unconstrained greedy teacher. Returns an empty problem when the
/// budget runs out.
CounterexampleResult search_gbs_counterexample(const CounterexampleSearch& config);

}  // namespace alteach

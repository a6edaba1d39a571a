#pragma once

#include <cstdint>
#include <string>

#include "alteach/bitset.hpp"
#include "alteach/problem.hpp"

namespace alteach {

enum class LearnerKind { Gbs, BetaGreedy, Random };

/// Active-learner query function q.
///
/// GBS is equivalent to BetaGreedy with beta = 1 and lowest-index tie-breaking.
/// Randomized learners are pure functions of (seed, version space, queried
/// set): the same history always yields the same query.
struct LearnerSpec {
  LearnerKind kind = LearnerKind::Gbs;
  double beta = 1.0;
  std::uint64_t seed = 0;

  static LearnerSpec gbs() { return {}; }
  static LearnerSpec beta_greedy(double beta, std::uint64_t seed) { return {LearnerKind::BetaGreedy, beta, seed}; }
  static LearnerSpec random(std::uint64_t seed) { return {LearnerKind::Random, 1.0, seed}; }

  void validate() const;
};

std::string to_string(LearnerKind kind);
LearnerKind learner_kind_from_string(const std::string& name);

/// u(x | vs) = (2/|vs|) * n_minus(x) * n_plus(x); in [0, |vs|/2].
double gbs_utility(const TeachingProblem& problem, const Bitset& vs, Index x);

/// Integer core of the utility, n_minus(x) * n_plus(x), for exact comparisons.
std::uint64_t split_product(const TeachingProblem& problem, const Bitset& vs, Index x);

/// Picks the learner's next query among instances not in `queried`.
/// Throws `Error` when every instance has been queried.
Index select_query(const LearnerSpec& learner, const TeachingProblem& problem, const Bitset& vs,
                   const Bitset& queried);

}  // namespace alteach

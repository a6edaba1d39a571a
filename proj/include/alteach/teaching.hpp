#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "alteach/learners.hpp"
#include "alteach/problem.hpp"

namespace alteach {

enum class ConstraintKind { Unconstrained, CloseOpposite, FarSame, CloseOppositeOrFarSame, NeighborChain };

/// Rule mapping a query to the teacher's admissible contrastive set xi(x^q).
struct ConstraintSpec {
  ConstraintKind kind = ConstraintKind::Unconstrained;
  double psi = 1.0;     // distance kinds, in (0, 1]
  std::size_t radius = 1;  // NeighborChain

  static ConstraintSpec unconstrained() { return {}; }
  static ConstraintSpec close_opposite(double psi) { return {ConstraintKind::CloseOpposite, psi, 1}; }
  static ConstraintSpec far_same(double psi) { return {ConstraintKind::FarSame, psi, 1}; }
  static ConstraintSpec close_or_far(double psi) { return {ConstraintKind::CloseOppositeOrFarSame, psi, 1}; }
  static ConstraintSpec neighbor_chain(std::size_t radius) { return {ConstraintKind::NeighborChain, 1.0, radius}; }

  bool needs_features() const;
  void validate() const;
};

/// Short names used in configs and CSV: none, C, F, C+F, chain.
std::string to_string(ConstraintKind kind);
ConstraintKind constraint_kind_from_string(const std::string& name);

/// xi(query), ascending instance order. Never contains the query itself.
std::vector<Index> constrained_set(const ConstraintSpec& spec, const TeachingProblem& problem, Index query);

/// |vs ∩ (S(query) ∪ S(candidate))|: the hypotheses this round removes if the
/// teacher answers `query` with `candidate`.
std::size_t marginal_gain(const TeachingProblem& problem, const Bitset& vs, Index query, Index candidate);

struct GreedyPick {
  std::optional<Index> pick;
  std::size_t gain = 0;                     // gain of `pick` (query-only gain when empty)
  std::size_t best_constrained_gain = 0;    // max gain inside the candidate set
  std::size_t best_unconstrained_gain = 0;  // max gain over every instance
};

/// Per-instance positive costs; an empty span means unit cost.
using CostVector = std::span<const double>;

/// Argmax of marginal gain (or gain/cost) over `candidates`, lowest index on ties.
/// With no candidates, `pick` is empty and the constrained gain is the
/// query's own gain.
GreedyPick greedy_pick(const TeachingProblem& problem, const Bitset& vs, Index query,
                       std::span<const Index> candidates, CostVector costs = {});

struct Round {
  std::size_t t = 0;
  Example query;
  std::optional<Example> contrastive;
  std::size_t vs_size_after = 0;
  std::size_t best_unconstrained_gain = 0;
  std::size_t best_constrained_gain = 0;

  bool operator==(const Round&) const = default;
};

struct Transcript {
  std::vector<Round> rounds;
  bool terminated = false;
  std::size_t total_examples = 0;

  /// Number of distinct instances that received a label (queries and contrastive examples).
  std::size_t distinct_instances() const;

  bool operator==(const Transcript&) const = default;
};

struct SessionOptions {
  /// Maximum rounds; 0 selects the default of 4 * |H|.
  std::size_t budget = 0;
  bool with_teacher = true;
  CostVector costs = {};
};

/// Runs the learner-teacher protocol until the version space is {target},
/// the budget is exhausted or no unqueried instance remains.
Transcript run_session(const TeachingProblem& problem, const LearnerSpec& learner,
                       const ConstraintSpec& constraint, const SessionOptions& options = {});

/// One contrastive choice per round; std::nullopt means the teacher stays silent.
using TeachingStep = std::optional<Index>;
using TeachingSequence = std::vector<TeachingStep>;

/// Replays fixed teacher choices against the learner. Rounds continue until
/// the target is isolated or the sequence is exhausted.
Transcript replay_session(const TeachingProblem& problem, const LearnerSpec& learner,
                          const TeachingSequence& steps);

/// Sum over rounds of c(query) + c(contrastive).
double cost_of(const Transcript& transcript, CostVector costs = {});

}  // namespace alteach

#include "alteach/learners.hpp"

#include <cmath>
#include <vector>

#include "alteach/rng.hpp"

namespace alteach {

void LearnerSpec::validate() const {
  if (kind == LearnerKind::BetaGreedy && !(beta >= 1.0)) {
    throw Error("beta must be >= 1, got " + std::to_string(beta));
  }
}

std::string to_string(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::Gbs: return "gbs";
    case LearnerKind::BetaGreedy: return "beta";
    case LearnerKind::Random: return "random";
  }
  return "?";
}

LearnerKind learner_kind_from_string(const std::string& name) {
  if (name == "gbs" || name == "GBS") return LearnerKind::Gbs;
  if (name == "beta" || name == "BetaGreedy" || name == "beta-greedy") return LearnerKind::BetaGreedy;
  if (name == "random" || name == "Random") return LearnerKind::Random;
  throw Error("unknown learner kind '" + name + "'");
}

std::uint64_t split_product(const TeachingProblem& problem, const Bitset& vs, Index x) {
  const std::uint64_t disagree = vs.count_and(problem.coverage(x));
  const std::uint64_t total = vs.count();
  return disagree * (total - disagree);
}

double gbs_utility(const TeachingProblem& problem, const Bitset& vs, Index x) {
  problem.check_instance(x);
  const auto n = vs.count();
  if (n == 0) throw Error("gbs_utility on an empty version space");
  return 2.0 / static_cast<double>(n) * static_cast<double>(split_product(problem, vs, x));
}

namespace {

// Deterministic draw keyed on the learner's full state.
std::uint64_t history_draw(std::uint64_t seed, const Bitset& vs, const Bitset& queried, std::uint64_t n) {
  SplitMix64 g(mix_seed(mix_seed(seed, vs.hash()), queried.hash()));
  return g.below(n);
}

}  // namespace

Index select_query(const LearnerSpec& learner, const TeachingProblem& problem, const Bitset& vs,
                   const Bitset& queried) {
  learner.validate();
  std::vector<Index> open;
  open.reserve(problem.instance_count());
  for (Index x = 0; x < problem.instance_count(); ++x) {
    if (!queried.test(x)) open.push_back(x);
  }
  if (open.empty()) throw Error("no unqueried instance remains");

  if (learner.kind == LearnerKind::Random) {
    return open[history_draw(learner.seed, vs, queried, open.size())];
  }

  std::vector<std::uint64_t> score(open.size());
  std::uint64_t best = 0;
  Index argmax = open.front();
  for (std::size_t i = 0; i < open.size(); ++i) {
    score[i] = split_product(problem, vs, open[i]);
    if (score[i] > best) {
      best = score[i];
      argmax = open[i];
    }
  }
  if (learner.kind == LearnerKind::Gbs) return argmax;

  // u(x) >= max/beta  <=>  beta * prod(x) >= max_prod (common 2/|vs| factor cancels).
  // With max_prod = 0 every open instance qualifies.
  std::vector<Index> admissible;
  for (std::size_t i = 0; i < open.size(); ++i) {
    const double lhs = learner.beta * static_cast<double>(score[i]);
    if (lhs >= static_cast<double>(best) * (1.0 - 1e-12)) admissible.push_back(open[i]);
  }
  return admissible[history_draw(learner.seed, vs, queried, admissible.size())];
}

}  // namespace alteach

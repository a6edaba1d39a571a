#include "alteach/teaching.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace alteach {

bool ConstraintSpec::needs_features() const {
  return kind == ConstraintKind::CloseOpposite || kind == ConstraintKind::FarSame ||
         kind == ConstraintKind::CloseOppositeOrFarSame;
}

void ConstraintSpec::validate() const {
  if (needs_features() && !(psi > 0.0 && psi <= 1.0)) {
    throw Error("psi must lie in (0, 1], got " + std::to_string(psi));
  }
  if (kind == ConstraintKind::NeighborChain && radius == 0) throw Error("chain radius must be positive");
}

std::string to_string(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::Unconstrained: return "none";
    case ConstraintKind::CloseOpposite: return "C";
    case ConstraintKind::FarSame: return "F";
    case ConstraintKind::CloseOppositeOrFarSame: return "C+F";
    case ConstraintKind::NeighborChain: return "chain";
  }
  return "?";
}

ConstraintKind constraint_kind_from_string(const std::string& name) {
  if (name == "none" || name == "unconstrained" || name == "Unconstrained") return ConstraintKind::Unconstrained;
  if (name == "C" || name == "close" || name == "CloseOpposite") return ConstraintKind::CloseOpposite;
  if (name == "F" || name == "far" || name == "FarSame") return ConstraintKind::FarSame;
  if (name == "C+F" || name == "CF" || name == "close+far" || name == "CloseOppositeOrFarSame") {
    return ConstraintKind::CloseOppositeOrFarSame;
  }
  if (name == "chain" || name == "NeighborChain") return ConstraintKind::NeighborChain;
  throw Error("unknown constraint kind '" + name + "'");
}

namespace {

// ceil(psi * m) with a guard against 0.1 * 30 = 3.0000000000000004.
std::size_t portion(double psi, std::size_t m) {
  const double raw = psi * static_cast<double>(m);
  const auto k = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  return std::min(k, m);
}

std::vector<Index> nearest_or_farthest(const TeachingProblem& problem, Index query, bool same_label,
                                       bool farthest, double psi) {
  const auto& features = problem.features();
  const int y = problem.target_label(query);
  std::vector<std::pair<double, Index>> pool;
  for (Index x = 0; x < problem.instance_count(); ++x) {
    if (x == query) continue;
    if ((problem.target_label(x) == y) != same_label) continue;
    const double d = (features.row(static_cast<Eigen::Index>(x)) - features.row(static_cast<Eigen::Index>(query)))
                         .squaredNorm();
    pool.emplace_back(farthest ? -d : d, x);
  }
  std::sort(pool.begin(), pool.end());
  pool.resize(portion(psi, pool.size()));
  std::vector<Index> out;
  out.reserve(pool.size());
  for (const auto& [d, x] : pool) out.push_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Index> constrained_set(const ConstraintSpec& spec, const TeachingProblem& problem, Index query) {
  spec.validate();
  problem.check_instance(query);
  if (spec.needs_features() && !problem.has_features()) {
    throw Error("constraint " + to_string(spec.kind) + " requires instance features");
  }
  const Index n = problem.instance_count();
  std::vector<Index> out;
  switch (spec.kind) {
    case ConstraintKind::Unconstrained:
      for (Index x = 0; x < n; ++x) {
        if (x != query) out.push_back(x);
      }
      break;
    case ConstraintKind::CloseOpposite:
      out = nearest_or_farthest(problem, query, false, false, spec.psi);
      break;
    case ConstraintKind::FarSame:
      out = nearest_or_farthest(problem, query, true, true, spec.psi);
      break;
    case ConstraintKind::CloseOppositeOrFarSame: {
      auto close = nearest_or_farthest(problem, query, false, false, spec.psi);
      auto far = nearest_or_farthest(problem, query, true, true, spec.psi);
      std::set_union(close.begin(), close.end(), far.begin(), far.end(), std::back_inserter(out));
      break;
    }
    case ConstraintKind::NeighborChain: {
      const Index lo = query >= spec.radius ? query - spec.radius : 0;
      const Index hi = std::min(n - 1, query + spec.radius);
      for (Index x = lo; x <= hi; ++x) {
        if (x != query) out.push_back(x);
      }
      break;
    }
  }
  return out;
}

std::size_t marginal_gain(const TeachingProblem& problem, const Bitset& vs, Index query, Index candidate) {
  problem.check_instance(query);
  problem.check_instance(candidate);
  return vs.count_and_or(problem.coverage(query), problem.coverage(candidate));
}

GreedyPick greedy_pick(const TeachingProblem& problem, const Bitset& vs, Index query,
                       std::span<const Index> candidates, CostVector costs) {
  problem.check_instance(query);
  if (!costs.empty() && costs.size() != problem.instance_count()) {
    throw Error("cost vector must have one entry per instance");
  }
  for (double c : costs) {
    if (!(c > 0.0)) throw Error("instance costs must be positive");
  }

  GreedyPick result;
  const Bitset& sq = problem.coverage(query);
  const std::size_t query_gain = vs.count_and(sq);
  result.best_unconstrained_gain = query_gain;
  for (Index x = 0; x < problem.instance_count(); ++x) {
    result.best_unconstrained_gain = std::max(result.best_unconstrained_gain, vs.count_and_or(sq, problem.coverage(x)));
  }

  if (candidates.empty()) {
    result.gain = query_gain;
    result.best_constrained_gain = query_gain;
    return result;
  }

  double best_score = -1.0;
  for (Index x : candidates) {
    problem.check_instance(x);
    const std::size_t g = vs.count_and_or(sq, problem.coverage(x));
    result.best_constrained_gain = std::max(result.best_constrained_gain, g);
    const double score = costs.empty() ? static_cast<double>(g) : static_cast<double>(g) / costs[x];
    if (score > best_score || (score == best_score && x < *result.pick)) {
      best_score = score;
      result.pick = x;
      result.gain = g;
    }
  }
  return result;
}

std::size_t Transcript::distinct_instances() const {
  std::set<Index> seen;
  for (const auto& r : rounds) {
    seen.insert(r.query.instance);
    if (r.contrastive) seen.insert(r.contrastive->instance);
  }
  return seen.size();
}

Transcript run_session(const TeachingProblem& problem, const LearnerSpec& learner,
                       const ConstraintSpec& constraint, const SessionOptions& options) {
  require_teachable(problem);
  learner.validate();
  constraint.validate();
  const std::size_t budget = options.budget == 0 ? 4 * problem.hypothesis_count() : options.budget;

  Transcript tr;
  Bitset vs(problem.hypothesis_count(), true);
  Bitset queried(problem.instance_count());
  tr.terminated = vs.count() == 1;

  for (std::size_t t = 1; t <= budget && !tr.terminated; ++t) {
    if (queried.count() == problem.instance_count()) break;
    const Index q = select_query(learner, problem, vs, queried);
    queried.set(q);

    Round round;
    round.t = t;
    round.query = {q, problem.target_label(q)};
    Bitset removed = problem.coverage(q);
    if (options.with_teacher) {
      const auto candidates = constrained_set(constraint, problem, q);
      const auto pick = greedy_pick(problem, vs, q, candidates, options.costs);
      round.best_unconstrained_gain = pick.best_unconstrained_gain;
      round.best_constrained_gain = pick.best_constrained_gain;
      if (pick.pick) {
        round.contrastive = Example{*pick.pick, problem.target_label(*pick.pick)};
        removed |= problem.coverage(*pick.pick);
      }
    } else {
      const std::size_t g = vs.count_and(problem.coverage(q));
      round.best_unconstrained_gain = g;
      round.best_constrained_gain = g;
    }
    vs -= removed;
    round.vs_size_after = vs.count();
    tr.total_examples += round.contrastive ? 2 : 1;
    tr.rounds.push_back(round);
    tr.terminated = round.vs_size_after == 1;
  }
  return tr;
}

Transcript replay_session(const TeachingProblem& problem, const LearnerSpec& learner,
                          const TeachingSequence& steps) {
  Transcript tr;
  Bitset vs(problem.hypothesis_count(), true);
  Bitset queried(problem.instance_count());
  tr.terminated = vs.count() == 1;
  for (std::size_t i = 0; i < steps.size() && !tr.terminated; ++i) {
    const Index q = select_query(learner, problem, vs, queried);
    queried.set(q);
    Round round;
    round.t = i + 1;
    round.query = {q, problem.target_label(q)};
    Bitset removed = problem.coverage(q);
    std::size_t gain = vs.count_and(removed);
    if (steps[i]) {
      const Index c = *steps[i];
      problem.check_instance(c);
      round.contrastive = Example{c, problem.target_label(c)};
      gain = vs.count_and_or(removed, problem.coverage(c));
      removed |= problem.coverage(c);
    }
    std::size_t best = vs.count_and(problem.coverage(q));
    for (Index x = 0; x < problem.instance_count(); ++x) {
      best = std::max(best, vs.count_and_or(problem.coverage(q), problem.coverage(x)));
    }
    round.best_unconstrained_gain = best;
    round.best_constrained_gain = gain;
    vs -= removed;
    round.vs_size_after = vs.count();
    tr.total_examples += round.contrastive ? 2 : 1;
    tr.rounds.push_back(round);
    tr.terminated = round.vs_size_after == 1;
  }
  return tr;
}

double cost_of(const Transcript& transcript, CostVector costs) {
  if (costs.empty()) return static_cast<double>(transcript.total_examples);
  double total = 0.0;
  for (const auto& r : transcript.rounds) {
    total += costs[r.query.instance];
    if (r.contrastive) total += costs[r.contrastive->instance];
  }
  return total;
}

}  // namespace alteach

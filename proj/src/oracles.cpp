#include "alteach/oracles.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "alteach/rng.hpp"

namespace alteach {

namespace {

constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max() / 4;

void check_cap(const TeachingProblem& problem, const OracleLimits& limits) {
  if (problem.instance_count() > limits.max_instances) {
    throw Error("exact oracle refused: " + std::to_string(problem.instance_count()) + " instances exceed the cap of " +
                std::to_string(limits.max_instances) + " (use the greedy teacher for an upper bound)");
  }
}

class SetCover {
 public:
  SetCover(const TeachingProblem& problem, const OracleLimits& limits) : problem_(problem), limits_(limits) {}

  OptResult solve() {
    Bitset uncovered(problem_.hypothesis_count(), true);
    uncovered.reset(problem_.target());

    // Greedy cover seeds the incumbent.
    Bitset u = uncovered;
    while (u.any()) {
      Index best = 0;
      std::size_t best_gain = 0;
      for (Index x = 0; x < problem_.instance_count(); ++x) {
        const std::size_t g = u.count_and(problem_.coverage(x));
        if (g > best_gain) {
          best_gain = g;
          best = x;
        }
      }
      if (best_gain == 0) throw Error("target is not identifiable: some hypothesis agrees with it everywhere");
      best_cover_.push_back(best);
      u -= problem_.coverage(best);
    }

    search(uncovered);
    OptResult result;
    result.value = best_cover_.size();
    std::sort(best_cover_.begin(), best_cover_.end());
    for (Index x : best_cover_) result.witness.push_back({x, problem_.target_label(x)});
    result.explored_states = explored_;
    return result;
  }

 private:
  void search(const Bitset& uncovered) {
    if (++explored_ > limits_.max_states) throw Error("teaching_dimension: state cap exceeded");
    const std::size_t depth = chosen_.size();
    if (uncovered.none()) {
      if (depth < best_cover_.size()) best_cover_ = chosen_;
      return;
    }
    std::size_t max_gain = 0;
    for (Index x = 0; x < problem_.instance_count(); ++x) {
      max_gain = std::max(max_gain, uncovered.count_and(problem_.coverage(x)));
    }
    const std::size_t lb = (uncovered.count() + max_gain - 1) / max_gain;
    if (depth + lb >= best_cover_.size()) return;

    auto [it, inserted] = seen_.try_emplace(uncovered, depth);
    if (!inserted) {
      if (it->second <= depth) return;
      it->second = depth;
    }

    // Some chosen set must cover the lowest uncovered hypothesis.
    const std::size_t e = uncovered.first();
    std::vector<std::pair<std::size_t, Index>> branches;
    for (Index x = 0; x < problem_.instance_count(); ++x) {
      if (problem_.coverage(x).test(e)) branches.emplace_back(uncovered.count_and(problem_.coverage(x)), x);
    }
    std::sort(branches.begin(), branches.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    for (const auto& [gain, x] : branches) {
      chosen_.push_back(x);
      search(uncovered - problem_.coverage(x));
      chosen_.pop_back();
    }
  }

  const TeachingProblem& problem_;
  const OracleLimits& limits_;
  std::vector<Index> chosen_;
  std::vector<Index> best_cover_;
  std::unordered_map<Bitset, std::size_t, BitsetHash> seen_;
  std::size_t explored_ = 0;
};

struct StateKey {
  Bitset vs;
  Bitset queried;
  bool operator==(const StateKey&) const = default;
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const { return k.vs.hash() * 0x9e3779b97f4a7c15ull ^ k.queried.hash(); }
};

struct MemoEntry {
  std::size_t value = 0;  // exact optimum, or a lower bound when !exact
  bool exact = false;
  TeachingStep choice;
};

class InteractiveSearch {
 public:
  InteractiveSearch(const TeachingProblem& problem, const LearnerSpec& learner, const ConstraintSpec& constraint,
                    const OracleLimits& limits)
      : problem_(problem), learner_(learner), constraint_(constraint), limits_(limits) {}

  OptResult solve() {
    StateKey root{Bitset(problem_.hypothesis_count(), true), Bitset(problem_.instance_count())};
    const std::size_t value = search(root, kInf);
    if (value >= kInf) throw Error("opt_teaching_with_learner: target cannot be isolated");

    OptResult result;
    result.value = value;
    result.explored_states = memo_.size();
    StateKey state = root;
    while (state.vs.count() > 1) {
      const auto& entry = memo_.at(state);
      const Index q = select_query(learner_, problem_, state.vs, state.queried);
      result.witness.push_back({q, problem_.target_label(q)});
      result.steps.push_back(entry.choice);
      state.queried.set(q);
      state.vs -= problem_.coverage(q);
      if (entry.choice) {
        result.witness.push_back({*entry.choice, problem_.target_label(*entry.choice)});
        state.vs -= problem_.coverage(*entry.choice);
      }
    }
    return result;
  }

 private:
  struct Child {
    std::size_t cost;
    TeachingStep choice;
    StateKey state;
  };

  std::size_t search(const StateKey& state, std::size_t bound) {
    if (state.vs.count() == 1) return 0;
    if (state.queried.count() == problem_.instance_count()) return kInf;

    auto found = memo_.find(state);
    if (found != memo_.end()) {
      if (found->second.exact || found->second.value >= bound) return found->second.value;
    } else if (memo_.size() >= limits_.max_states) {
      throw Error("opt_teaching_with_learner: state cap of " + std::to_string(limits_.max_states) + " exceeded");
    }

    const Index q = select_query(learner_, problem_, state.vs, state.queried);
    StateKey after_query{state.vs - problem_.coverage(q), state.queried};
    after_query.queried.set(q);

    std::vector<Child> children;
    std::vector<Bitset> seen;
    for (Index c : constrained_set(constraint_, problem_, q)) {
      Bitset vs = after_query.vs - problem_.coverage(c);
      if (vs == after_query.vs || std::find(seen.begin(), seen.end(), vs) != seen.end()) continue;
      seen.push_back(vs);
      children.push_back({2, c, {std::move(vs), after_query.queried}});
    }
    std::stable_sort(children.begin(), children.end(),
                     [](const Child& a, const Child& b) { return a.state.vs.count() < b.state.vs.count(); });
    children.push_back({1, std::nullopt, after_query});

    std::size_t best = bound;
    std::size_t lower = kInf;
    TeachingStep best_choice;
    bool improved = false;
    for (const auto& child : children) {
      const std::size_t optimistic = child.cost + (child.state.vs.count() > 1 ? 1 : 0);
      if (optimistic >= best) {
        lower = std::min(lower, optimistic);
        continue;
      }
      const std::size_t sub = search(child.state, best - child.cost);
      const std::size_t total = sub >= kInf ? kInf : child.cost + sub;
      lower = std::min(lower, total);
      if (total < best) {
        best = total;
        best_choice = child.choice;
        improved = true;
      }
    }

    MemoEntry& entry = memo_[state];
    if (improved) {
      entry = {best, true, best_choice};
      return best;
    }
    entry.value = std::max(entry.value, lower);
    return lower;
  }

  const TeachingProblem& problem_;
  const LearnerSpec& learner_;
  const ConstraintSpec& constraint_;
  const OracleLimits& limits_;
  std::unordered_map<StateKey, MemoEntry, StateKeyHash> memo_;
};

}  // namespace

OptResult teaching_dimension(const TeachingProblem& problem, const OracleLimits& limits) {
  check_cap(problem, limits);
  if (problem.hypothesis_count() == 1) return {};
  return SetCover(problem, limits).solve();
}

OptResult opt_teaching_with_learner(const TeachingProblem& problem, const LearnerSpec& learner,
                                    const ConstraintSpec& constraint, const OracleLimits& limits) {
  check_cap(problem, limits);
  require_teachable(problem);
  learner.validate();
  constraint.validate();
  return InteractiveSearch(problem, learner, constraint, limits).solve();
}

CounterexampleResult search_gbs_counterexample(const CounterexampleSearch& config) {
  if (config.max_instances < 2 || config.max_hypotheses < 3) throw Error("counterexample search caps too small");
  SplitMix64 rng(config.seed);
  CounterexampleResult result;
  const auto gbs = LearnerSpec::gbs();
  for (result.tries = 1; result.tries <= config.max_tries; ++result.tries) {
    const std::size_t n_x = 2 + rng.below(config.max_instances - 1);
    const std::size_t n_h = 3 + rng.below(config.max_hypotheses - 2);
    LabelMatrix labels(static_cast<Eigen::Index>(n_h), static_cast<Eigen::Index>(n_x));
    for (Eigen::Index h = 0; h < labels.rows(); ++h) {
      for (Eigen::Index x = 0; x < labels.cols(); ++x) labels(h, x) = rng.below(2) ? 1 : -1;
    }
    TeachingProblem problem(std::move(labels), 0);
    if (preflight_teachable(problem)) continue;

    SessionOptions alone_opts;
    alone_opts.with_teacher = false;
    auto alone = run_session(problem, gbs, ConstraintSpec::unconstrained(), alone_opts);
    auto taught = run_session(problem, gbs, ConstraintSpec::unconstrained());
    if (!alone.terminated || !taught.terminated) continue;
    if (alone.total_examples >= taught.total_examples) continue;
    if (config.required_costs &&
        (alone.total_examples != config.required_costs->first ||
         taught.total_examples != config.required_costs->second)) {
      continue;
    }
    result.problem = std::move(problem);
    result.alone = std::move(alone);
    result.with_teacher = std::move(taught);
    return result;
  }
  result.tries = config.max_tries;
  return result;
}

}  // namespace alteach

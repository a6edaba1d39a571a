#include "alteach/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <unordered_set>

#include "alteach/geometry.hpp"
#include "alteach/rng.hpp"

namespace alteach {

Alpha alpha_of_run(const Transcript& transcript) {
  Alpha a;
  for (const auto& r : transcript.rounds) {
    if (r.best_constrained_gain == 0) {
      if (r.best_unconstrained_gain > 0) a.infinite = true;
      continue;
    }
    a.value = std::max(a.value, static_cast<double>(r.best_unconstrained_gain) /
                                    static_cast<double>(r.best_constrained_gain));
  }
  if (a.infinite) a.value = std::numeric_limits<double>::infinity();
  return a;
}

std::size_t sequence_objective(const TeachingProblem& problem, const LearnerSpec& learner,
                               const TeachingSequence& sigma) {
  Bitset vs(problem.hypothesis_count(), true);
  Bitset queried(problem.instance_count());
  for (const auto& step : sigma) {
    if (vs.count() <= 1) break;
    const Index q = select_query(learner, problem, vs, queried);
    queried.set(q);
    vs -= problem.coverage(q);
    if (step) {
      problem.check_instance(*step);
      vs -= problem.coverage(*step);
    }
  }
  return problem.hypothesis_count() - vs.count();
}

TeachingSequence concat(const TeachingSequence& a, const TeachingSequence& b) {
  TeachingSequence out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

namespace {

std::size_t delta(const TeachingProblem& problem, const LearnerSpec& learner, TeachingSequence sigma,
                  std::size_t f_sigma, Index x) {
  sigma.push_back(x);
  return sequence_objective(problem, learner, sigma) - f_sigma;
}

TeachingSequence prefix(const TeachingSequence& s, std::size_t n) {
  return TeachingSequence(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(std::min(n, s.size())));
}

}  // namespace

double submodularity_ratio(const TeachingProblem& problem, const LearnerSpec& learner, const TeachingSequence& sigma,
                           const TeachingSequence& sigma_prime) {
  const auto joined = concat(sigma, sigma_prime);
  const std::size_t f_sigma = sequence_objective(problem, learner, sigma);
  const std::size_t f_joined = sequence_objective(problem, learner, joined);
  double ratio = 1.0;
  for (Index x = 0; x < problem.instance_count(); ++x) {
    const std::size_t den = delta(problem, learner, joined, f_joined, x);
    if (den == 0) continue;
    const std::size_t num = delta(problem, learner, sigma, f_sigma, x);
    ratio = std::min(ratio, static_cast<double>(num) / static_cast<double>(den));
  }
  return ratio;
}

std::optional<double> backward_curvature(const TeachingProblem& problem, const LearnerSpec& learner,
                                         const TeachingSequence& sigma, const TeachingSequence& sigma_prime) {
  const double f_prime = static_cast<double>(sequence_objective(problem, learner, sigma_prime));
  if (f_prime == 0.0) return std::nullopt;
  const double f_joined = static_cast<double>(sequence_objective(problem, learner, concat(sigma_prime, sigma)));
  const double f_sigma = static_cast<double>(sequence_objective(problem, learner, sigma));
  return 1.0 - (f_joined - f_sigma) / f_prime;
}

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<Bitset, Bitset>& p) const { return p.first.hash() * 31 + p.second.hash(); }
};

struct Frontier {
  Bitset vs;
  Bitset queried;
  std::size_t depth;
};

// Version spaces (|H'| >= 2) reachable when the teacher answers every query
// with some other instance.
std::vector<Bitset> reachable_version_spaces(const TeachingProblem& problem, const LearnerSpec& learner,
                                             const RhoGammaOptions& options, bool& capped) {
  std::vector<Bitset> out;
  std::unordered_set<Bitset, BitsetHash> seen_vs;
  auto record = [&](const Bitset& vs) {
    if (vs.count() >= 2 && seen_vs.insert(vs).second) out.push_back(vs);
  };

  const Bitset full(problem.hypothesis_count(), true);
  if (options.sampled > 0) {
    SplitMix64 rng(options.seed);
    record(full);
    for (std::size_t s = 0; s < options.sampled; ++s) {
      Bitset vs = full;
      Bitset queried(problem.instance_count());
      const std::size_t depth = rng.below(options.depth_cap + 1);
      for (std::size_t d = 0; d < depth && vs.count() >= 2; ++d) {
        const Index q = select_query(learner, problem, vs, queried);
        queried.set(q);
        Index c = rng.below(problem.instance_count() - 1);
        if (c >= q) ++c;
        vs -= problem.coverage(q);
        vs -= problem.coverage(c);
        record(vs);
      }
    }
    capped = true;
    return out;
  }

  std::unordered_set<std::pair<Bitset, Bitset>, PairHash> seen_state;
  std::deque<Frontier> queue;
  queue.push_back({full, Bitset(problem.instance_count()), 0});
  record(full);
  while (!queue.empty()) {
    Frontier cur = std::move(queue.front());
    queue.pop_front();
    if (cur.vs.count() < 2) continue;
    if (cur.depth >= options.depth_cap) {
      capped = true;
      continue;
    }
    const Index q = select_query(learner, problem, cur.vs, cur.queried);
    Bitset queried = cur.queried;
    queried.set(q);
    const Bitset after_q = cur.vs - problem.coverage(q);
    for (Index c = 0; c < problem.instance_count(); ++c) {
      if (c == q) continue;
      Bitset vs = after_q - problem.coverage(c);
      if (vs.count() < 2) continue;
      if (!seen_state.insert({vs, queried}).second) continue;
      if (out.size() >= options.max_states) {
        capped = true;
        return out;
      }
      record(vs);
      queue.push_back({std::move(vs), queried, cur.depth + 1});
    }
  }
  return out;
}

}  // namespace

RhoGamma rho_gamma_star(const TeachingProblem& problem, const LearnerSpec& learner, const RhoGammaOptions& options) {
  require_teachable(problem);
  RhoGamma result;
  result.sampled = options.sampled > 0;
  const auto spaces = reachable_version_spaces(problem, learner, options, result.depth_capped);
  result.states = spaces.size();

  for (const auto& vs : spaces) {
    const TeachingProblem sub = problem.restricted(vs);
    const auto greedy = run_session(sub, learner, ConstraintSpec::unconstrained());
    TeachingSequence x;
    for (const auto& r : greedy.rounds) {
      x.push_back(r.contrastive ? TeachingStep(r.contrastive->instance) : std::nullopt);
    }
    const TeachingSequence sigma =
        opt_teaching_with_learner(sub, learner, ConstraintSpec::unconstrained(), options.oracle_limits).steps;

    for (std::size_t i = 1; i <= x.size(); ++i) {
      if (auto g = backward_curvature(sub, learner, sigma, prefix(x, i))) {
        result.gamma_g = std::max(result.gamma_g, *g);
      }
    }
    for (std::size_t i = 0; i <= x.size(); ++i) {
      for (std::size_t j = 0; j <= sigma.size(); ++j) {
        result.rho_g = std::min(result.rho_g, submodularity_ratio(sub, learner, prefix(x, i), prefix(sigma, j)));
      }
    }
  }
  return result;
}

Thm1Bound bound_thm1(double alpha, double rho_g, double gamma_g, double h_count, std::size_t opt_t_al) {
  if (!(gamma_g >= 1.0)) throw Error("bound_thm1: gamma_g must be >= 1");
  if (!(rho_g > 0.0)) throw Error("bound_thm1: rho_g must be positive");
  if (!(h_count >= 1.0)) throw Error("bound_thm1: |H| must be >= 1");
  Thm1Bound b;
  const double log_h = std::log(h_count);
  const double log_h_over_g = std::log(h_count / gamma_g);
  b.term2 = alpha * log_h_over_g / (rho_g * gamma_g);
  if (gamma_g > 1.0) {
    b.term1 = alpha * log_h * log_h_over_g / (rho_g * gamma_g * std::log(gamma_g / (gamma_g - 1.0)));
  }
  b.value = (b.term1 + b.term2) * static_cast<double>(opt_t_al);
  return b;
}

double coherence_epsilon(std::size_t k, double c_star) {
  const double kk = static_cast<double>(k);
  return std::min((1.0 - c_star) / (1.0 + c_star), c_star / (kk - c_star));
}

Thm3Bound bound_thm3(std::size_t k, double c_star, double h_count, std::size_t opt_t_al) {
  if (k == 0) throw Error("bound_thm3: k must be >= 1");
  Thm3Bound b;
  if (!(c_star > 0.0 && c_star < 1.0)) {
    b.degenerate = true;
    b.value = b.alpha_cap = std::numeric_limits<double>::infinity();
    b.epsilon = 0.0;
    return b;
  }
  const double kk = static_cast<double>(k);
  b.epsilon = coherence_epsilon(k, c_star);
  b.alpha_cap = std::max(kk / c_star, 2.0 / (1.0 - c_star));
  const double log_h = std::log(h_count);
  b.value = b.alpha_cap / b.epsilon * log_h * log_h * static_cast<double>(opt_t_al);
  return b;
}

double bound_gbs_alone(std::size_t k, double c_star, double h_count) {
  const double kk = static_cast<double>(k);
  const double eta = std::max((1.0 + c_star) / 2.0, (kk + 1.0) / (kk + 2.0));
  if (h_count <= 1.0) return 0.0;
  if (eta >= 1.0) return std::numeric_limits<double>::infinity();
  return std::log(h_count) / std::log(1.0 / eta);
}

DichotomyReport verify_gbs_dichotomy(const TeachingProblem& problem, std::size_t k, double c_star,
                                     std::size_t max_states, double slack) {
  DichotomyReport report;
  const auto gbs = LearnerSpec::gbs();
  const Bitset none(problem.instance_count());
  const double small_limit =
      c_star <= slack ? std::numeric_limits<double>::infinity() : static_cast<double>(k) / c_star;

  std::unordered_set<Bitset, BitsetHash> checked;
  std::unordered_set<Bitset, BitsetHash> expanded;
  std::deque<Bitset> queue;
  queue.push_back(Bitset(problem.hypothesis_count(), true));
  while (!queue.empty()) {
    Bitset vs = std::move(queue.front());
    queue.pop_front();
    if (vs.count() < 2 || !checked.insert(vs).second) continue;
    if (checked.size() > max_states) {
      report.depth_capped = true;
      break;
    }
    ++report.states_checked;

    // Queried instances have zero split on any reachable version space, so the
    // query from a fresh history equals the in-session query.
    const Index q = select_query(gbs, problem, vs, none);
    long long sum = 0;
    for (Index h : vs.indices()) sum += problem.label(h, q);
    const double size = static_cast<double>(vs.count());
    const bool balanced = static_cast<double>(std::llabs(sum)) <= c_star * size + slack * size;
    const bool small = size <= small_limit + slack;
    if (!balanced && !small) report.violations.push_back({vs, q, sum});

    const Bitset after_q = vs - problem.coverage(q);
    queue.push_back(after_q);
    for (Index c = 0; c < problem.instance_count(); ++c) {
      if (c != q) queue.push_back(after_q - problem.coverage(c));
    }
  }
  return report;
}

DiagnosticsReport diagnose(const TeachingProblem& problem, const DiagnoseOptions& options) {
  require_teachable(problem);
  DiagnosticsReport report;
  const auto run = run_session(problem, options.learner, options.constraint);
  report.alpha = alpha_of_run(run);
  report.greedy_cost = run.total_examples;

  const auto coh = coherence(problem);
  report.c_star = coh.value;
  report.c_star_tolerance = coh.tolerance;
  report.k_min = std::max<std::size_t>(min_neighborly_k(problem), 1);
  const double h = static_cast<double>(problem.hypothesis_count());
  report.bound_gbs_alone = bound_gbs_alone(report.k_min, report.c_star, h);

  const auto& limits = options.rho_gamma.oracle_limits;
  if (problem.instance_count() <= limits.max_instances) {
    try {
      report.opt_t = teaching_dimension(problem, limits).value;
      report.opt_t_al =
          opt_teaching_with_learner(problem, options.learner, ConstraintSpec::unconstrained(), limits).value;
    } catch (const Error&) {
      report.opt_t.reset();
      report.opt_t_al.reset();
    }
  }
  if (options.compute_rho_gamma && report.opt_t_al) {
    try {
      report.rho_gamma = rho_gamma_star(problem, options.learner, options.rho_gamma);
      report.depth_capped = report.rho_gamma->depth_capped;
    } catch (const Error&) {
      report.rho_gamma.reset();
    }
  }
  if (report.opt_t_al) {
    if (report.rho_gamma && !report.alpha.infinite) {
      report.thm1 = bound_thm1(report.alpha.value, report.rho_gamma->rho_g, report.rho_gamma->gamma_g, h,
                               *report.opt_t_al);
    }
    report.thm3 = bound_thm3(report.k_min, report.c_star, h, *report.opt_t_al);
  }
  return report;
}

}  // namespace alteach

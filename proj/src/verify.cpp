#include "alteach/verify.hpp"

#include <cmath>
#include <sstream>

#include "alteach/data.hpp"
#include "alteach/diagnostics.hpp"
#include "alteach/geometry.hpp"
#include "alteach/io.hpp"
#include "alteach/rng.hpp"
#include "alteach/sweep.hpp"

namespace alteach {

bool SuiteReport::passed() const {
  for (const auto& c : checks) {
    if (!c.passed && !c.informational) return false;
  }
  return true;
}

std::string format_report(const SuiteReport& report) {
  std::ostringstream out;
  for (const auto& c : report.checks) {
    const char* tag = c.passed ? "PASS" : (c.informational ? "NOTE" : "FAIL");
    out << "[" << tag << "] " << report.suite << ": " << c.name;
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << "\n";
  }
  out << report.suite << ": " << (report.passed() ? "ok" : "FAILED") << "\n";
  return out.str();
}

CounterexampleSearch counterexample_search_config() {
  CounterexampleSearch cfg;
  cfg.max_instances = 6;
  cfg.max_hypotheses = 8;
  cfg.seed = 2024;
  cfg.required_costs = std::make_pair(std::size_t{3}, std::size_t{4});
  return cfg;
}

TeachingProblem random_small_problem(std::uint64_t seed, std::size_t max_x, std::size_t max_h) {
  SplitMix64 rng(seed);
  const std::size_t n_x = 2 + rng.below(max_x - 1);
  const std::size_t cap = n_x < 20 ? (std::size_t{1} << n_x) : max_h;
  const std::size_t n_h = 2 + rng.below(std::min(max_h, cap) - 1);
  return random_problem(n_x, n_h, rng.next());
}

SuiteReport verify_fixtures(const std::filesystem::path& dir) {
  SuiteReport report{"fixtures", {}};
  const auto gbs = LearnerSpec::gbs();

  {
    const auto problem = load_problem(dir / kCounterexampleFixture);
    SessionOptions alone_opts;
    alone_opts.with_teacher = false;
    const auto alone = run_session(problem, gbs, ConstraintSpec::unconstrained(), alone_opts);
    const auto taught = run_session(problem, gbs, ConstraintSpec::unconstrained());
    std::ostringstream d;
    d << "alone " << alone.total_examples << ", with teacher " << taught.total_examples;
    report.checks.push_back({"GBS alone uses 3 labels, GBS with greedy teacher uses 4",
                             alone.terminated && taught.terminated && alone.total_examples == 3 &&
                                 taught.total_examples == 4,
                             d.str()});
  }

  {
    const auto problem = load_problem(dir / kChainFixture);
    const auto fam = thm2_family(1);
    report.checks.push_back({"chain family fixture matches the generator", problem.labels() == fam.problem.labels() &&
                                                                              problem.target() == fam.problem.target(),
                             ""});
    OracleLimits limits;
    limits.max_instances = problem.instance_count();
    const auto opt = opt_teaching_with_learner(problem, gbs, ConstraintSpec::unconstrained(), limits);
    report.checks.push_back({"chain family unconstrained optimum is 2 labels", opt.value == 2,
                             "value " + std::to_string(opt.value)});
    const auto run = run_session(problem, gbs, ConstraintSpec::neighbor_chain(1));
    const double root_m = std::sqrt(static_cast<double>(problem.hypothesis_count()));
    const auto expected = static_cast<std::size_t>(root_m) + 3;
    report.checks.push_back({"chain family greedy teacher labels sqrt(m)+3 distinct instances",
                             run.terminated && run.distinct_instances() == expected,
                             std::to_string(run.distinct_instances()) + " of expected " + std::to_string(expected) +
                                 ", " + std::to_string(run.total_examples) + " labels in total"});
    const auto alpha = alpha_of_run(run);
    report.checks.push_back({"chain family alpha within a factor 2 of sqrt(m)",
                             !alpha.infinite && alpha.value >= root_m / 2 && alpha.value <= 2 * root_m,
                             "alpha " + format_number(alpha.value)});
  }
  return report;
}

SuiteReport verify_lemmas(std::size_t count, std::size_t dichotomy_count, std::uint64_t seed) {
  SuiteReport report{"lemmas", {}};
  const auto gbs = LearnerSpec::gbs();
  std::size_t violations = 0;
  std::string first;
  for (std::size_t i = 0; i < count; ++i) {
    const auto p = random_small_problem(mix_seed(seed, i), 8, 12);
    const auto t = teaching_dimension(p).value;
    const auto tal = opt_teaching_with_learner(p, gbs, ConstraintSpec::unconstrained()).value;
    if (!(t <= tal && tal <= 2 * t)) {
      if (violations++ == 0) first = "instance " + std::to_string(i) + ": T=" + std::to_string(t) +
                                     " T+AL=" + std::to_string(tal);
    }
  }
  report.checks.push_back({"OPT^T <= OPT^{T+AL} <= 2 OPT^T on " + std::to_string(count) + " random problems",
                           violations == 0, std::to_string(violations) + " violations" +
                                                (first.empty() ? "" : "; first " + first)});

  std::size_t bad = 0, states = 0;
  for (std::size_t i = 0; i < dichotomy_count; ++i) {
    const auto p = random_small_problem(mix_seed(seed ^ 0xd1c0ull, i), 8, 12);
    const auto k = std::max<std::size_t>(min_neighborly_k(p), 1);
    const auto c = coherence(p).value;
    const auto rep = verify_gbs_dichotomy(p, k, c, 200'000, 1e-6);
    states += rep.states_checked;
    bad += rep.violations.size();
  }
  report.checks.push_back({"GBS query is c*-balanced or |H'| <= k/c* on " + std::to_string(dichotomy_count) +
                               " problems",
                           bad == 0, std::to_string(bad) + " violations over " + std::to_string(states) + " states"});
  return report;
}

SuiteReport verify_bounds(std::size_t count, std::uint64_t seed) {
  SuiteReport report{"bounds", {}};
  const auto gbs = LearnerSpec::gbs();
  std::size_t range_bad = 0, eps_bad = 0, probe_bad = 0, capped = 0;
  double worst_margin = 1.0;
  RhoGammaOptions opts;
  opts.depth_cap = 8;
  for (std::size_t i = 0; i < count; ++i) {
    const auto p = random_small_problem(mix_seed(seed ^ 0xb0dull, i), 7, 10);
    const auto rg = rho_gamma_star(p, gbs, opts);
    if (rg.depth_capped) ++capped;
    const double h = static_cast<double>(p.hypothesis_count());
    const bool gamma_ok = rg.gamma_g >= 1.0 - 1e-12 && rg.gamma_g <= std::max(1.0, h - 1.0) + 1e-12;
    const bool rho_ok = rg.rho_g > 0.0 && rg.rho_g <= 1.0 + 1e-12;
    const auto run = run_session(p, gbs, ConstraintSpec::unconstrained());
    const auto alpha = alpha_of_run(run);
    if (!gamma_ok || !rho_ok || alpha.infinite || alpha.value != 1.0) ++range_bad;

    const auto k = std::max<std::size_t>(min_neighborly_k(p), 1);
    const double c = coherence(p).value;
    const double eps = std::max(0.0, coherence_epsilon(k, c));
    worst_margin = std::min(worst_margin, rg.rho_g - eps);
    if (rg.rho_g < eps - 1e-9) ++eps_bad;

    const auto opt = opt_teaching_with_learner(p, gbs, ConstraintSpec::unconstrained()).value;
    const auto b3 = bound_thm3(k, c, h, opt);
    if (!b3.degenerate && static_cast<double>(run.total_examples) > b3.value) ++probe_bad;
  }
  report.checks.push_back({"1 <= gamma^g <= |H|-1, 0 < rho^g <= 1, alpha = 1 unconstrained", range_bad == 0,
                           std::to_string(range_bad) + " violations, " + std::to_string(capped) + " depth-capped"});
  report.checks.push_back({"rho^g >= min{(1-c*)/(1+c*), c*/(k-c*)}", eps_bad == 0,
                           std::to_string(eps_bad) + " violations, worst margin " + format_number(worst_margin)});
  report.checks.push_back({"greedy cost <= indicative coherence bound (constants = 1)", probe_bad == 0,
                           std::to_string(probe_bad) + " exceedances", true});
  return report;
}

}  // namespace alteach

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "alteach/learners.hpp"
#include "alteach/oracles.hpp"
#include "alteach/problem.hpp"
#include "alteach/teaching.hpp"

namespace alteach {

/// Approximation factor of a run. `infinite` is set when some round had a
/// positive unconstrained gain but no constrained gain.
struct Alpha {
  double value = 1.0;
  bool infinite = false;
};

Alpha alpha_of_run(const Transcript& transcript);

/// f(sigma) = |H| - |H^q(sigma)|: the sequence objective with the learner's
/// induced queries replayed.
std::size_t sequence_objective(const TeachingProblem& problem, const LearnerSpec& learner,
                               const TeachingSequence& sigma);

TeachingSequence concat(const TeachingSequence& a, const TeachingSequence& b);

/// min over x with Delta(x | sigma + sigma') > 0 of Delta(x | sigma) / Delta(x | sigma + sigma');
/// 1 when no instance qualifies.
double submodularity_ratio(const TeachingProblem& problem, const LearnerSpec& learner, const TeachingSequence& sigma,
                           const TeachingSequence& sigma_prime);

/// 1 - (f(sigma' + sigma) - f(sigma)) / f(sigma'); empty when f(sigma') = 0.
std::optional<double> backward_curvature(const TeachingProblem& problem, const LearnerSpec& learner,
                                         const TeachingSequence& sigma, const TeachingSequence& sigma_prime);

struct RhoGammaOptions {
  std::size_t depth_cap = 6;
  std::size_t max_states = 5'000;
  /// 0 enumerates; otherwise evaluates this many random reachable states (estimate).
  std::size_t sampled = 0;
  std::uint64_t seed = 0;
  OracleLimits oracle_limits = {};
};

struct RhoGamma {
  double rho_g = 1.0;
  double gamma_g = 1.0;
  bool depth_capped = false;
  bool sampled = false;
  std::size_t states = 0;
};

/// Enumerates version spaces reachable through unconstrained teacher choices,
/// restarts the learner on each, and compares the greedy teaching sequence with
/// an optimal one.
RhoGamma rho_gamma_star(const TeachingProblem& problem, const LearnerSpec& learner,
                        const RhoGammaOptions& options = {});

/// Bounds below use constant 1 for every O(.) and natural logarithms. They are
/// indicative, not certified.
struct Thm1Bound {
  double value = 0.0;
  double term1 = 0.0;  // log|H| log(|H|/g) / (r g log(g/(g-1))), times alpha
  double term2 = 0.0;  // log(|H|/g) / (r g), times alpha
};

Thm1Bound bound_thm1(double alpha, double rho_g, double gamma_g, double h_count, std::size_t opt_t_al);

struct Thm3Bound {
  double value = 0.0;
  double epsilon = 0.0;
  double alpha_cap = 0.0;
  bool degenerate = false;  // c* in {0, 1}
};

Thm3Bound bound_thm3(std::size_t k, double c_star, double h_count, std::size_t opt_t_al);

double coherence_epsilon(std::size_t k, double c_star);

/// ln|H| / ln(1/eta), eta = max{(1+c*)/2, (k+1)/(k+2)}. Infinite when eta >= 1.
double bound_gbs_alone(std::size_t k, double c_star, double h_count);

struct DichotomyViolation {
  Bitset version_space;
  Index query = 0;
  long long label_sum = 0;
};

struct DichotomyReport {
  std::size_t states_checked = 0;
  std::vector<DichotomyViolation> violations;
  bool depth_capped = false;
};

/// For each version space reachable under GBS and any teacher, checks that the
/// GBS query x has |sum_h h(x)| <= c* |H'| or |H'| <= k / c*.
DichotomyReport verify_gbs_dichotomy(const TeachingProblem& problem, std::size_t k, double c_star,
                                     std::size_t max_states = 200'000, double slack = 1e-9);

struct DiagnosticsReport {
  Alpha alpha;
  std::optional<RhoGamma> rho_gamma;  // empty when not computed
  double c_star = 0.0;
  double c_star_tolerance = 0.0;
  std::size_t k_min = 0;
  std::optional<std::size_t> opt_t;
  std::optional<std::size_t> opt_t_al;
  std::optional<Thm1Bound> thm1;
  std::optional<Thm3Bound> thm3;
  double bound_gbs_alone = 0.0;
  std::size_t greedy_cost = 0;
  bool depth_capped = false;
};

struct DiagnoseOptions {
  LearnerSpec learner = LearnerSpec::gbs();
  ConstraintSpec constraint = ConstraintSpec::unconstrained();
  RhoGammaOptions rho_gamma = {};
  bool compute_rho_gamma = true;
};

DiagnosticsReport diagnose(const TeachingProblem& problem, const DiagnoseOptions& options = {});

}  // namespace alteach

#pragma once

#include <Eigen/Dense>

#include <cstdint>

#include "alteach/problem.hpp"
#include "alteach/teaching.hpp"

namespace alteach {

/// Generative parameters for the two-class, 2-D synthetic problem.
/// Class Gaussians are defaults of this implementation; the hypothesis
/// mixture follows the experiment description.
struct SyntheticConfig {
  std::size_t n_points = 200;
  Eigen::Vector2d class_mean_neg{-1.0, 0.5};
  Eigen::Vector2d class_mean_pos{1.0, -0.5};
  Eigen::Matrix2d class_cov_neg = 0.25 * Eigen::Matrix2d::Identity();
  Eigen::Matrix2d class_cov_pos = 0.25 * Eigen::Matrix2d::Identity();
  std::size_t n_hypotheses = 64;
  std::size_t n_components = 8;  // component i has mean [pi/4 * i, 0]
  Eigen::Matrix2d hypothesis_cov = (Eigen::Matrix2d() << 2.0, 0.0, 0.0, 5e-3).finished();
  std::size_t max_retries = 10'000;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Points are class-negative first, then class-positive. Hypothesis (theta, b)
/// labels x as sign(x1 cos theta + x2 sin theta - b) with sign(0) = +1.
/// Duplicate label rows are resampled. The target is hypothesis 0; experiments
/// pick their own via `with_target`.
TeachingProblem gen_synthetic(const SyntheticConfig& config);

struct Thm2Family {
  TeachingProblem problem;
  ConstraintSpec constraint;
  std::size_t m = 0;  // hypotheses
  std::size_t n = 0;  // instances
};

/// Adversarial family for the linear dependence on alpha: m = (6k+6)^2
/// hypotheses, n = sqrt(m) + 3 instances and a radius-1 neighbor chain.
/// Verifies itself (greedy walk, OPT = 2) and throws if the check fails.
Thm2Family thm2_family(std::size_t k);

/// Uniform random problem with pairwise-distinct rows and a random target.
TeachingProblem random_problem(std::size_t n_instances, std::size_t n_hypotheses, std::uint64_t seed);

}  // namespace alteach

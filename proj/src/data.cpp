#include "alteach/data.hpp"

#include <numbers>
#include <unordered_set>

#include "alteach/oracles.hpp"
#include "alteach/rng.hpp"

namespace alteach {

namespace {

std::string row_key(const LabelMatrix& labels, Eigen::Index h) {
  std::string key(static_cast<std::size_t>(labels.cols()), '+');
  for (Eigen::Index x = 0; x < labels.cols(); ++x) {
    if (labels(h, x) < 0) key[static_cast<std::size_t>(x)] = '-';
  }
  return key;
}

Eigen::Matrix2d cholesky(const Eigen::Matrix2d& cov, const char* what) {
  Eigen::LLT<Eigen::Matrix2d> llt(cov);
  if (llt.info() != Eigen::Success) throw Error(std::string(what) + " covariance is not positive definite");
  return llt.matrixL();
}

Eigen::Vector2d gaussian(SplitMix64& rng, const Eigen::Vector2d& mean, const Eigen::Matrix2d& chol) {
  const Eigen::Vector2d z(rng.normal(), rng.normal());
  return mean + chol * z;
}

}  // namespace

void SyntheticConfig::validate() const {
  if (n_points < 2) throw Error("n_points must be at least 2");
  if (n_components == 0 || n_hypotheses == 0 || n_hypotheses % n_components != 0) {
    throw Error("n_hypotheses must be a positive multiple of n_components");
  }
  cholesky(class_cov_neg, "class");
  cholesky(class_cov_pos, "class");
  cholesky(hypothesis_cov, "hypothesis");
}

TeachingProblem gen_synthetic(const SyntheticConfig& config) {
  config.validate();
  SplitMix64 point_rng(mix_seed(config.seed, 1));
  SplitMix64 hyp_rng(mix_seed(config.seed, 2));

  const auto n = static_cast<Eigen::Index>(config.n_points);
  const Eigen::Index n_neg = n / 2;
  FeatureMatrix features(n, 2);
  const Eigen::Matrix2d l_neg = cholesky(config.class_cov_neg, "class");
  const Eigen::Matrix2d l_pos = cholesky(config.class_cov_pos, "class");
  for (Eigen::Index i = 0; i < n; ++i) {
    const bool neg = i < n_neg;
    features.row(i) = gaussian(point_rng, neg ? config.class_mean_neg : config.class_mean_pos, neg ? l_neg : l_pos)
                          .transpose();
  }

  const Eigen::Matrix2d l_h = cholesky(config.hypothesis_cov, "hypothesis");
  const auto n_h = static_cast<Eigen::Index>(config.n_hypotheses);
  const std::size_t per_component = config.n_hypotheses / config.n_components;
  LabelMatrix labels(n_h, n);
  std::unordered_set<std::string> seen;
  std::size_t retries = 0;
  for (Eigen::Index h = 0; h < n_h; ++h) {
    const auto component = static_cast<double>(static_cast<std::size_t>(h) / per_component);
    const Eigen::Vector2d mean(std::numbers::pi / 4.0 * component, 0.0);
    for (;;) {
      const Eigen::Vector2d p = gaussian(hyp_rng, mean, l_h);
      const Eigen::Vector2d w(std::cos(p(0)), std::sin(p(0)));
      const Eigen::VectorXd score = features * w;
      for (Eigen::Index x = 0; x < n; ++x) labels(h, x) = score(x) - p(1) >= 0.0 ? 1 : -1;
      if (seen.insert(row_key(labels, h)).second) break;
      if (++retries > config.max_retries) {
        throw Error("gen_synthetic: could not draw " + std::to_string(config.n_hypotheses) +
                    " distinct hypotheses within " + std::to_string(config.max_retries) + " retries");
      }
    }
  }
  return TeachingProblem(std::move(labels), 0, std::move(features));
}

Thm2Family thm2_family(std::size_t k) {
  if (k == 0) throw Error("thm2_family: k must be >= 1");
  const std::size_t s = 6 * k + 6;
  const std::size_t m = s * s;
  const std::size_t n = s + 3;
  const std::size_t a_rows = m / 2;
  const std::size_t b_rows = m / 2 - s - 2;

  // Instance x_i has index i - 1. Tail instances are x_3 .. x_{n-1}.
  const Index x1 = 0, x2 = 1, xn = n - 1;
  const Index tail_begin = 2;

  // Tail subsets of weight 0, 1, 2 in a fixed order.
  std::vector<std::vector<Index>> subsets{{}};
  for (Index a = 0; a < s; ++a) subsets.push_back({tail_begin + a});
  for (Index a = 0; a < s; ++a) {
    for (Index b = a + 1; b < s; ++b) subsets.push_back({tail_begin + a, tail_begin + b});
  }

  LabelMatrix labels = LabelMatrix::Ones(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  Eigen::Index row = 1;  // row 0 is the all-positive target
  auto neg = [&](Eigen::Index r, Index x) { labels(r, static_cast<Eigen::Index>(x)) = -1; };
  for (std::size_t i = 0; i < a_rows; ++i, ++row) {
    neg(row, x2);
    neg(row, xn);
    for (Index x : subsets[i]) neg(row, x);
  }
  for (std::size_t i = 0; i < b_rows; ++i, ++row) {
    neg(row, x1);
    neg(row, xn);
    for (Index x : subsets[i]) neg(row, x);
  }
  for (Index j = 0; j < s; ++j, ++row) {
    neg(row, tail_begin + j);
    neg(row, xn);
  }
  neg(row, xn);
  ++row;
  if (static_cast<std::size_t>(row) != m) throw Error("thm2_family: internal row count mismatch");

  Thm2Family fam{TeachingProblem(std::move(labels), 0), ConstraintSpec::neighbor_chain(1), m, n};
  require_teachable(fam.problem);

  const auto run = run_session(fam.problem, LearnerSpec::gbs(), fam.constraint);
  if (!run.terminated || run.distinct_instances() != n || run.rounds.size() != s / 2 + 2) {
    throw Error("thm2_family: greedy walk does not follow the intended chain");
  }
  OracleLimits limits;
  limits.max_instances = n;
  const auto opt = opt_teaching_with_learner(fam.problem, LearnerSpec::gbs(), ConstraintSpec::unconstrained(), limits);
  if (opt.value != 2) throw Error("thm2_family: unconstrained optimum is not 2");
  return fam;
}

TeachingProblem random_problem(std::size_t n_instances, std::size_t n_hypotheses, std::uint64_t seed) {
  if (n_instances == 0 || n_hypotheses == 0) throw Error("random_problem: empty dimensions");
  if (n_instances < 63 && n_hypotheses > (std::size_t{1} << n_instances)) {
    throw Error("random_problem: more hypotheses than distinct labelings");
  }
  SplitMix64 rng(seed);
  LabelMatrix labels(static_cast<Eigen::Index>(n_hypotheses), static_cast<Eigen::Index>(n_instances));
  std::unordered_set<std::string> seen;
  for (Eigen::Index h = 0; h < labels.rows(); ++h) {
    do {
      for (Eigen::Index x = 0; x < labels.cols(); ++x) labels(h, x) = rng.below(2) ? 1 : -1;
    } while (!seen.insert(row_key(labels, h)).second);
  }
  const Index target = rng.below(n_hypotheses);
  return TeachingProblem(std::move(labels), target);
}

}  // namespace alteach

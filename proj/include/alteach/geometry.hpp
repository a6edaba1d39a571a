#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "alteach/problem.hpp"

namespace alteach {

/// d_H(x, x'): number of hypotheses labeling x and x' differently.
std::size_t hypothesis_distance(const TeachingProblem& problem, Index x, Index x2);

using DistanceMatrix = Eigen::Matrix<std::size_t, Eigen::Dynamic, Eigen::Dynamic>;

struct NeighborlyGraph {
  DistanceMatrix distances;
  /// Smallest k whose threshold graph {d_H <= k} is connected (1 if that would be 0).
  std::size_t k_min = 0;
};

DistanceMatrix distance_matrix(const TeachingProblem& problem);
NeighborlyGraph neighborly_graph(const TeachingProblem& problem);
std::string distance_csv(const DistanceMatrix& distances);

/// Bottleneck of a minimum spanning tree over d_H (Kruskal + union-find).
/// A single instance yields 0.
std::size_t min_neighborly_k(const TeachingProblem& problem);

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Solution of the zero-sum game where the row player maximizes and the
/// column player minimizes p^T-weighted payoffs.
template <typename Scalar>
struct GameSolution {
  Scalar value{};
  Vector<Scalar> column_strategy;  // minimizer
  Vector<Scalar> row_strategy;     // maximizer
  Scalar lower{};                  // min_j (row_strategy^T A)_j
  Scalar upper{};                  // max_i (A column_strategy)_i
  std::size_t pivots = 0;
};

/// min_p max_i (A p)_i over distributions p on columns, by the simplex method
/// (Bland's rule) on the shifted LP  max 1^T z  s.t.  (A + s) z <= 1, z >= 0.
template <typename Scalar>
GameSolution<Scalar> solve_matrix_game(const Matrix<Scalar>& payoff, std::size_t max_pivots = 100'000) {
  using std::abs;
  const Eigen::Index m = payoff.rows();
  const Eigen::Index n = payoff.cols();
  if (m == 0 || n == 0) throw Error("empty payoff matrix");
  const Scalar eps = Scalar(1e-12);

  const Scalar shift = Scalar(1) - payoff.minCoeff();
  // Tableau rows 0..m-1 are constraints; columns 0..n-1 are z, n..n+m-1 slacks, last is rhs.
  Matrix<Scalar> tab = Matrix<Scalar>::Zero(m + 1, n + m + 1);
  tab.topLeftCorner(m, n) = payoff.array() + shift;
  tab.block(0, n, m, m).setIdentity();
  tab.col(n + m).head(m).setOnes();
  tab.row(m).head(n).setConstant(Scalar(-1));
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;

  GameSolution<Scalar> sol;
  for (;;) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n + m; ++j) {
      if (tab(m, j) < -eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    if (++sol.pivots > max_pivots) throw Error("game solver did not converge within the pivot cap");

    Eigen::Index leave = -1;
    Scalar best_ratio{};
    for (Eigen::Index i = 0; i < m; ++i) {
      if (tab(i, enter) > eps) {
        const Scalar ratio = tab(i, n + m) / tab(i, enter);
        if (leave < 0 || ratio < best_ratio - eps ||
            (abs(ratio - best_ratio) <= eps && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
          leave = i;
          best_ratio = ratio;
        }
      }
    }
    if (leave < 0) throw Error("game LP unbounded");

    tab.row(leave) /= tab(leave, enter);
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i != leave && tab(i, enter) != Scalar(0)) tab.row(i) -= tab(i, enter) * tab.row(leave);
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  Vector<Scalar> z = Vector<Scalar>::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index b = basis[static_cast<std::size_t>(i)];
    if (b < n) z(b) = tab(i, n + m);
  }
  const Scalar total = z.sum();
  sol.column_strategy = z / total;
  const Vector<Scalar> y = tab.row(m).segment(n, m).transpose();
  sol.row_strategy = y / y.sum();
  sol.value = Scalar(1) / total - shift;
  sol.upper = (payoff * sol.column_strategy).maxCoeff();
  sol.lower = (sol.row_strategy.transpose() * payoff).minCoeff();
  return sol;
}

struct CoherenceResult {
  double value = 0.0;
  double lower = 0.0;  // certified by the dual (hypothesis mixture)
  double upper = 0.0;  // certified by `distribution`
  Eigen::VectorXd distribution;
  double tolerance = 0.0;
};

/// c* = min_P max_h |sum_x h(x) P(x)|, solved as a matrix game with one row per
/// signed hypothesis. Throws if the certified gap exceeds `tolerance`.
CoherenceResult coherence(const TeachingProblem& problem, double tolerance = 1e-6);

}  // namespace alteach

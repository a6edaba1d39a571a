#include "alteach/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

namespace alteach {

std::size_t hypothesis_distance(const TeachingProblem& problem, Index x, Index x2) {
  problem.check_instance(x);
  problem.check_instance(x2);
  const auto& L = problem.labels();
  return static_cast<std::size_t>(
      (L.col(static_cast<Eigen::Index>(x)).array() != L.col(static_cast<Eigen::Index>(x2)).array()).count());
}

DistanceMatrix distance_matrix(const TeachingProblem& problem) {
  const auto n = static_cast<Eigen::Index>(problem.instance_count());
  DistanceMatrix d = DistanceMatrix::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      d(a, b) = d(b, a) = hypothesis_distance(problem, static_cast<Index>(a), static_cast<Index>(b));
    }
  }
  return d;
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

std::size_t bottleneck(const DistanceMatrix& d) {
  const auto n = static_cast<std::size_t>(d.rows());
  if (n <= 1) return 0;
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      edges.emplace_back(d(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)), a, b);
    }
  }
  std::sort(edges.begin(), edges.end());
  UnionFind uf(n);
  std::size_t joined = 1;
  for (const auto& [w, a, b] : edges) {
    if (uf.unite(a, b) && ++joined == n) return std::max<std::size_t>(w, 1);
  }
  return 0;
}

}  // namespace

NeighborlyGraph neighborly_graph(const TeachingProblem& problem) {
  NeighborlyGraph g;
  g.distances = distance_matrix(problem);
  g.k_min = bottleneck(g.distances);
  return g;
}

std::size_t min_neighborly_k(const TeachingProblem& problem) { return bottleneck(distance_matrix(problem)); }

std::string distance_csv(const DistanceMatrix& d) {
  std::ostringstream out;
  out << "instance";
  for (Eigen::Index j = 0; j < d.cols(); ++j) out << ",x" << j;
  out << "\n";
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    out << "x" << i;
    for (Eigen::Index j = 0; j < d.cols(); ++j) out << "," << d(i, j);
    out << "\n";
  }
  return out.str();
}

CoherenceResult coherence(const TeachingProblem& problem, double tolerance) {
  if (!(tolerance > 0.0)) throw Error("coherence tolerance must be positive");
  const auto n_h = static_cast<Eigen::Index>(problem.hypothesis_count());
  Eigen::MatrixXd payoff(2 * n_h, static_cast<Eigen::Index>(problem.instance_count()));
  const Eigen::MatrixXd labels = problem.labels().cast<double>();
  payoff.topRows(n_h) = labels;
  payoff.bottomRows(n_h) = -labels;

  const auto game = solve_matrix_game<double>(payoff);
  CoherenceResult r;
  r.distribution = game.column_strategy;
  r.upper = game.upper;
  r.lower = game.lower;
  r.value = std::clamp(game.value, 0.0, 1.0);
  r.tolerance = tolerance;
  if (r.upper - r.lower > tolerance || r.value < r.lower - tolerance || r.value > r.upper + tolerance) {
    throw Error("coherence: duality gap " + std::to_string(r.upper - r.lower) + " exceeds tolerance");
  }
  return r;
}

}  // namespace alteach

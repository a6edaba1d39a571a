#include "doctest.h"

#include "alteach/geometry.hpp"
#include "alteach/rng.hpp"
#include "alteach/verify.hpp"
#include "support.hpp"

using namespace alteach;

TEST_CASE("hypothesis distances on P0") {
  const auto p = testing::p0();
  CHECK(hypothesis_distance(p, 0, 2) == 1);
  CHECK(hypothesis_distance(p, 0, 1) == 2);
  CHECK(hypothesis_distance(p, 1, 1) == 0);
  const auto d = distance_matrix(p);
  CHECK(d == d.transpose());
  for (Eigen::Index a = 0; a < 3; ++a) {
    for (Eigen::Index b = 0; b < 3; ++b) {
      for (Eigen::Index c = 0; c < 3; ++c) CHECK(d(a, c) <= d(a, b) + d(b, c));
    }
  }
  CHECK(distance_csv(d).rfind("instance,x0,x1,x2\nx0,0,2,1\n", 0) == 0);
}

TEST_CASE("k_min") {
  CHECK(min_neighborly_k(testing::p0()) == 1);
  CHECK(neighborly_graph(testing::p0()).k_min == 1);
  // Identical columns: connected at threshold 0, reported as 1.
  CHECK(min_neighborly_k(TeachingProblem(testing::rows({{1, 1}, {-1, -1}}), 0)) == 1);
  CHECK(min_neighborly_k(TeachingProblem(testing::rows({{1}, {-1}}), 0)) == 0);
  // Thresholds on a line: adjacent points differ on exactly one hypothesis.
  CHECK(min_neighborly_k(TeachingProblem(
            testing::rows({{1, 1, 1, 1}, {-1, 1, 1, 1}, {-1, -1, 1, 1}, {-1, -1, -1, 1}, {-1, -1, -1, -1}}), 0)) == 1);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto p = random_small_problem(mix_seed(s, 3), 8, 12);
    CHECK(std::max<std::size_t>(min_neighborly_k(p), 1) == testing::brute_k_min(p));
  }
}

TEST_CASE("k_min is invariant under instance and hypothesis permutations") {
  const auto p = random_small_problem(11, 7, 10);
  auto l = p.labels();
  l.col(0).swap(l.col(1));
  l.row(0).swap(l.row(1));
  CHECK(min_neighborly_k(TeachingProblem(l, p.target() < 2 ? 1 - p.target() : p.target())) == min_neighborly_k(p));
}

TEST_CASE("coherence closed forms") {
  CHECK(coherence(TeachingProblem(testing::rows({{1, -1}, {-1, 1}}), 0)).value == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(coherence(testing::p0()).value == doctest::Approx(1.0));
  const auto r = coherence(TeachingProblem(testing::rows({{1, -1}, {-1, 1}}), 0));
  CHECK(r.distribution(0) == doctest::Approx(0.5));
  CHECK(r.lower <= r.value + 1e-9);
  CHECK(r.value <= r.upper + 1e-9);
  CHECK_THROWS_AS(coherence(testing::p0(), 0.0), Error);
}

TEST_CASE("coherence of thresholds on three points matches the grid") {
  const TeachingProblem p(testing::rows({{1, 1, 1}, {-1, 1, 1}, {-1, -1, 1}, {-1, -1, -1}}), 0);
  CHECK(coherence(p).value == doctest::Approx(testing::grid_coherence(p, 1000)).epsilon(1e-3));
}

TEST_CASE("coherence agrees with the simplex grid on tiny problems") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto p = random_small_problem(mix_seed(s, 5), 4, 6);
    const double lp = coherence(p).value;
    const double grid = testing::grid_coherence(p, 240);
    CHECK(lp <= grid + 1e-9);
    CHECK(grid - lp <= 1.0 / 60);
  }
}

TEST_CASE("coherence is invariant under permuting rows and columns") {
  const auto p = random_small_problem(42, 5, 8);
  auto l = p.labels();
  l.row(0).swap(l.row(1));
  l.col(0).swap(l.col(4 < l.cols() ? 4 : l.cols() - 1));
  CHECK(coherence(TeachingProblem(l, 0)).value == doctest::Approx(coherence(p).value).epsilon(1e-9));
}

TEST_CASE("matrix game solver on textbook games") {
  Matrix<double> pennies(2, 2);
  pennies << 1, -1, -1, 1;
  const auto g = solve_matrix_game<double>(pennies);
  CHECK(g.value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(g.column_strategy(0) == doctest::Approx(0.5));
  CHECK(g.row_strategy(1) == doctest::Approx(0.5));

  // Rock-paper-scissors seen by the maximizer.
  Matrix<long double> rps(3, 3);
  rps << 0, -1, 1, 1, 0, -1, -1, 1, 0;
  const auto h = solve_matrix_game<long double>(rps);
  CHECK(static_cast<double>(h.value) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(static_cast<double>(h.upper - h.lower) <= 1e-12);
}

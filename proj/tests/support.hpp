#pragma once

// Small fixtures and brute-force reference implementations used by the tests.
// None of these share code paths with the library solvers.

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "alteach/learners.hpp"
#include "alteach/problem.hpp"
#include "alteach/teaching.hpp"

namespace testing {

using alteach::Index;
using alteach::LabelMatrix;
using alteach::TeachingProblem;

// h0 = (+,+,+) target, h1 = (-,+,+), h2 = (+,-,+), h3 = (-,-,-)
inline TeachingProblem p0() {
  LabelMatrix l(4, 3);
  l << 1, 1, 1,
      -1, 1, 1,
       1, -1, 1,
      -1, -1, -1;
  return TeachingProblem(l, 0);
}

inline LabelMatrix rows(std::initializer_list<std::initializer_list<int>> data) {
  LabelMatrix l(static_cast<Eigen::Index>(data.size()), static_cast<Eigen::Index>(data.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : data) {
    Eigen::Index c = 0;
    for (int v : row) l(r, c++) = static_cast<std::int8_t>(v);
    ++r;
  }
  return l;
}

// Hypotheses still consistent with the target after labeling `xs`.
inline std::vector<Index> survivors(const TeachingProblem& p, const std::vector<Index>& xs) {
  std::vector<Index> out;
  for (Index h = 0; h < p.hypothesis_count(); ++h) {
    bool ok = true;
    for (Index x : xs) ok = ok && p.label(h, x) == p.target_label(x);
    if (ok) out.push_back(h);
  }
  return out;
}

// Minimum teaching set by enumerating every subset of instances.
inline std::size_t brute_teaching_dimension(const TeachingProblem& p) {
  const std::size_t n = p.instance_count();
  std::size_t best = n + 1;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<Index> xs;
    for (Index x = 0; x < n; ++x) {
      if (mask >> x & 1) xs.push_back(x);
    }
    if (survivors(p, xs).size() == 1) best = std::min(best, xs.size());
  }
  return best;
}

// Plain game-tree recursion (no memo, no pruning) over teacher choices including silence.
inline std::size_t brute_opt_interactive(const TeachingProblem& p, const alteach::LearnerSpec& learner,
                                         const std::vector<Index>& labeled, const std::vector<Index>& queried) {
  const auto alive = survivors(p, labeled);
  if (alive.size() == 1) return 0;
  if (queried.size() == p.instance_count()) return std::numeric_limits<std::size_t>::max() / 4;
  alteach::Bitset vs(p.hypothesis_count());
  for (Index h : alive) vs.set(h);
  alteach::Bitset q_set(p.instance_count());
  for (Index x : queried) q_set.set(x);
  const Index q = alteach::select_query(learner, p, vs, q_set);
  auto next_labeled = labeled;
  next_labeled.push_back(q);
  auto next_queried = queried;
  next_queried.push_back(q);
  std::size_t best = 1 + brute_opt_interactive(p, learner, next_labeled, next_queried);
  for (Index c = 0; c < p.instance_count(); ++c) {
    if (c == q) continue;
    auto with_c = next_labeled;
    with_c.push_back(c);
    best = std::min(best, 2 + brute_opt_interactive(p, learner, with_c, next_queried));
  }
  return best;
}

inline std::size_t brute_opt_interactive(const TeachingProblem& p, const alteach::LearnerSpec& learner) {
  return brute_opt_interactive(p, learner, {}, {});
}

// Coherence by exhaustive search over the simplex grid with step 1/resolution.
inline double grid_coherence(const TeachingProblem& p, int resolution) {
  const std::size_t n = p.instance_count();
  std::vector<int> w(n, 0);
  double best = std::numeric_limits<double>::infinity();
  auto eval = [&] {
    double worst = 0.0;
    for (Index h = 0; h < p.hypothesis_count(); ++h) {
      long s = 0;
      for (Index x = 0; x < n; ++x) s += p.label(h, x) * w[x];
      worst = std::max(worst, std::abs(static_cast<double>(s)) / resolution);
    }
    best = std::min(best, worst);
  };
  // Enumerate compositions of `resolution` into n parts.
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == n) {
      w[i] = left;
      eval();
      return;
    }
    for (int v = 0; v <= left; ++v) {
      w[i] = v;
      self(self, i + 1, left - v);
    }
  };
  rec(rec, 0, resolution);
  return best;
}

// Smallest k with a connected threshold graph, by trying every k with BFS.
inline std::size_t brute_k_min(const TeachingProblem& p) {
  const std::size_t n = p.instance_count();
  auto dist = [&](Index a, Index b) {
    std::size_t d = 0;
    for (Index h = 0; h < p.hypothesis_count(); ++h) d += p.label(h, a) != p.label(h, b);
    return d;
  };
  for (std::size_t k = 0; k <= p.hypothesis_count(); ++k) {
    std::vector<bool> seen(n, false);
    std::queue<Index> q;
    q.push(0);
    seen[0] = true;
    std::size_t count = 1;
    while (!q.empty()) {
      const Index a = q.front();
      q.pop();
      for (Index b = 0; b < n; ++b) {
        if (!seen[b] && dist(a, b) <= k) {
          seen[b] = true;
          ++count;
          q.push(b);
        }
      }
    }
    if (count == n) return std::max<std::size_t>(k, 1);
  }
  return p.hypothesis_count();
}

}  // namespace testing

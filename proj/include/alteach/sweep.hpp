#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alteach/diagnostics.hpp"
#include "alteach/problem.hpp"
#include "alteach/teaching.hpp"

namespace alteach {

struct SweepConfig {
  std::vector<double> betas{1, 5, 10, 100, 1000};
  std::vector<double> psis{0.1, 0.2, 0.3, 0.5, 0.7, 1.0};
  std::vector<ConstraintKind> constraints{ConstraintKind::CloseOpposite, ConstraintKind::FarSame,
                                          ConstraintKind::CloseOppositeOrFarSame};
  /// Adds AL-alone and unconstrained-teacher cells once per beta.
  bool baselines = true;
  /// Empty means every hypothesis serves as the target once.
  std::vector<Index> targets;
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  std::size_t threads = 1;

  void validate() const;
};

inline constexpr const char* kAloneCell = "AL-alone";

struct SweepRow {
  double beta = 1.0;
  std::optional<double> psi;  // empty for baselines
  std::string constraint;
  Index target = 0;
  std::size_t rounds = 0;
  std::size_t labels_total = 0;
  bool terminated = false;
  Alpha alpha;
  std::uint64_t seed = 0;
};

struct AggregateRow {
  double beta = 1.0;
  std::optional<double> psi;
  std::string constraint;
  std::size_t n = 0;
  double mean_labels = 0.0;
  double se_labels = 0.0;
  double mean_rounds = 0.0;
  double se_rounds = 0.0;
  double mean_alpha = 0.0;  // over finite values
  std::size_t infinite_alpha = 0;
  std::size_t unterminated = 0;
};

/// Learner seed used for a target; shared by every cell so that AL-alone and
/// AL+teacher face the same learner.
std::uint64_t target_seed(std::uint64_t master, Index target);

/// Rows are ordered by (beta, cell, target) regardless of `threads`.
std::vector<SweepRow> sweep(const TeachingProblem& problem, const SweepConfig& config);

std::vector<AggregateRow> aggregate(const std::vector<SweepRow>& rows);

std::string csv_field(const std::string& s);
std::string format_number(double v);
std::string rows_csv(const std::vector<SweepRow>& rows);
std::string aggregate_csv(const std::vector<AggregateRow>& rows);

}  // namespace alteach

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "alteach/bitset.hpp"

namespace alteach {

using Index = std::size_t;

/// Dense ±1 label matrix, one row per hypothesis, one column per instance.
using LabelMatrix = Eigen::Matrix<std::int8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
/// One feature vector per row (instance).
using FeatureMatrix = Eigen::MatrixXd;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A labeled instance (x, y).
struct Example {
  Index instance = 0;
  int label = 1;

  bool operator==(const Example&) const = default;
};

/// Finite teaching instance: ground set, hypothesis class and target.
///
/// Immutable after construction. Coverage sets S(x) = {h : h(x) != h*(x)} are
/// precomputed as bitsets over hypotheses. Construction validates shape, label
/// values, the target index and feature dimensions; pairwise-distinct rows are
/// checked separately by `preflight_teachable` so that callers can report the
/// offending pair.
class TeachingProblem {
 public:
  TeachingProblem(LabelMatrix labels, Index target,
                  std::optional<FeatureMatrix> features = std::nullopt,
                  std::vector<std::string> names = {});

  Index instance_count() const { return static_cast<Index>(labels_.cols()); }
  Index hypothesis_count() const { return static_cast<Index>(labels_.rows()); }
  Index target() const { return target_; }

  int label(Index h, Index x) const { return labels_(static_cast<Eigen::Index>(h), static_cast<Eigen::Index>(x)); }
  int target_label(Index x) const { return label(target_, x); }
  const LabelMatrix& labels() const { return labels_; }

  bool has_features() const { return features_.has_value(); }
  const FeatureMatrix& features() const;
  const std::optional<FeatureMatrix>& maybe_features() const { return features_; }
  const std::vector<std::string>& names() const { return names_; }

  /// S(x), precomputed.
  const Bitset& coverage(Index x) const { return coverage_[x]; }

  /// Same instance set and class with a different target.
  TeachingProblem with_target(Index target) const;

  /// Problem over the hypotheses in `rows` only (instances unchanged); the
  /// target must be a member. Used to restart a learner from a sub-class H'.
  TeachingProblem restricted(const Bitset& rows) const;

  /// Index of the target inside `restricted(rows)`.
  static Index restricted_index(const Bitset& rows, Index h);

  void check_instance(Index x) const;

 private:
  LabelMatrix labels_;
  Index target_;
  std::optional<FeatureMatrix> features_;
  std::vector<std::string> names_;
  std::vector<Bitset> coverage_;
};

/// Subset of hypothesis indices consistent with the labels seen so far.
class VersionSpace {
 public:
  VersionSpace() = default;
  explicit VersionSpace(Bitset members) : members_(std::move(members)) {}

  static VersionSpace full(const TeachingProblem& problem) {
    return VersionSpace(Bitset(problem.hypothesis_count(), true));
  }

  std::size_t size() const { return members_.count(); }
  bool contains(Index h) const { return members_.test(h); }
  const Bitset& members() const { return members_; }

  bool operator==(const VersionSpace&) const = default;

 private:
  Bitset members_;
};

std::vector<Index> coverage_set(const TeachingProblem& problem, Index x);

/// vs \ S(x)
VersionSpace update_version_space(const VersionSpace& vs, const TeachingProblem& problem, Index x);

/// |H| - |H^q(seq)| where every query and every teaching example is applied.
std::size_t objective_f(const TeachingProblem& problem, std::span<const Index> teaching_seq,
                        std::span<const Index> induced_queries);

struct DuplicateRows {
  Index first;
  Index second;
};

/// Returns the first pair of identical hypothesis rows, if any.
std::optional<DuplicateRows> preflight_teachable(const TeachingProblem& problem);

/// Throws `Error` naming both rows when `preflight_teachable` fails.
void require_teachable(const TeachingProblem& problem);

}  // namespace alteach

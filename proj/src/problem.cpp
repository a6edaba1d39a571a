#include "alteach/problem.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

namespace alteach {

TeachingProblem::TeachingProblem(LabelMatrix labels, Index target,
                                 std::optional<FeatureMatrix> features,
                                 std::vector<std::string> names)
    : labels_(std::move(labels)), target_(target), features_(std::move(features)),
      names_(std::move(names)) {
  if (labels_.rows() < 1) throw Error("problem needs at least one hypothesis");
  if (labels_.cols() < 1) throw Error("problem needs at least one instance");
  if (target_ >= hypothesis_count()) {
    throw Error("target " + std::to_string(target_) + " out of range for " +
                std::to_string(hypothesis_count()) + " hypotheses");
  }
  for (Eigen::Index h = 0; h < labels_.rows(); ++h) {
    for (Eigen::Index x = 0; x < labels_.cols(); ++x) {
      const int v = labels_(h, x);
      if (v != 1 && v != -1) {
        throw Error("labels[" + std::to_string(h) + "][" + std::to_string(x) +
                    "] must be +1 or -1, got " + std::to_string(v));
      }
    }
  }
  if (features_ && features_->rows() != labels_.cols()) {
    throw Error("features has " + std::to_string(features_->rows()) + " rows, expected one per instance (" +
                std::to_string(labels_.cols()) + ")");
  }
  if (!names_.empty() && names_.size() != instance_count()) {
    throw Error("names has " + std::to_string(names_.size()) + " entries, expected " +
                std::to_string(instance_count()));
  }

  coverage_.reserve(instance_count());
  for (Index x = 0; x < instance_count(); ++x) {
    Bitset s(hypothesis_count());
    const int y = target_label(x);
    for (Index h = 0; h < hypothesis_count(); ++h) {
      if (label(h, x) != y) s.set(h);
    }
    coverage_.push_back(std::move(s));
  }
}

const FeatureMatrix& TeachingProblem::features() const {
  if (!features_) throw Error("problem has no features");
  return *features_;
}

TeachingProblem TeachingProblem::with_target(Index target) const {
  return TeachingProblem(labels_, target, features_, names_);
}

TeachingProblem TeachingProblem::restricted(const Bitset& rows) const {
  if (rows.size() != hypothesis_count() || !rows.test(target_)) {
    throw Error("restricted class must be a subset containing the target");
  }
  const auto members = rows.indices();
  LabelMatrix sub(static_cast<Eigen::Index>(members.size()), labels_.cols());
  for (std::size_t i = 0; i < members.size(); ++i) {
    sub.row(static_cast<Eigen::Index>(i)) = labels_.row(static_cast<Eigen::Index>(members[i]));
  }
  return TeachingProblem(std::move(sub), restricted_index(rows, target_), features_, names_);
}

Index TeachingProblem::restricted_index(const Bitset& rows, Index h) {
  Index pos = 0;
  for (Index i = 0; i < h; ++i) pos += rows.test(i) ? 1 : 0;
  return pos;
}

void TeachingProblem::check_instance(Index x) const {
  if (x >= instance_count()) {
    throw std::out_of_range("instance " + std::to_string(x) + " out of range for " +
                            std::to_string(instance_count()) + " instances");
  }
}

std::vector<Index> coverage_set(const TeachingProblem& problem, Index x) {
  problem.check_instance(x);
  return problem.coverage(x).indices();
}

VersionSpace update_version_space(const VersionSpace& vs, const TeachingProblem& problem, Index x) {
  problem.check_instance(x);
  return VersionSpace(vs.members() - problem.coverage(x));
}

std::size_t objective_f(const TeachingProblem& problem, std::span<const Index> teaching_seq,
                        std::span<const Index> induced_queries) {
  Bitset removed(problem.hypothesis_count());
  for (Index x : teaching_seq) {
    problem.check_instance(x);
    removed |= problem.coverage(x);
  }
  for (Index x : induced_queries) {
    problem.check_instance(x);
    removed |= problem.coverage(x);
  }
  return removed.count();
}

std::optional<DuplicateRows> preflight_teachable(const TeachingProblem& problem) {
  std::unordered_map<std::string, Index> seen;
  const auto& labels = problem.labels();
  for (Index h = 0; h < problem.hypothesis_count(); ++h) {
    std::string key(reinterpret_cast<const char*>(labels.row(static_cast<Eigen::Index>(h)).data()),
                    problem.instance_count());
    auto [it, inserted] = seen.emplace(std::move(key), h);
    if (!inserted) return DuplicateRows{it->second, h};
  }
  return std::nullopt;
}

void require_teachable(const TeachingProblem& problem) {
  if (auto dup = preflight_teachable(problem)) {
    throw Error("hypotheses " + std::to_string(dup->first) + " and " + std::to_string(dup->second) +
                " have identical label rows");
  }
}

}  // namespace alteach

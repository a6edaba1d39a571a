#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

#include "alteach/diagnostics.hpp"
#include "alteach/problem.hpp"
#include "alteach/teaching.hpp"

namespace alteach {

using Json = nlohmann::json;

/// Problem file format:
///
///   { "labels": [[1,-1,...], ...],      // one row per hypothesis
///     "target": 0,
///     "features": [[0.1, 2.0], ...],    // optional, one row per instance
///     "names": ["x0", ...] }            // optional
///
/// Serialization writes one matrix row per line and is byte-stable.
std::string problem_to_text(const TeachingProblem& problem);

/// Parses and validates a problem document. Syntax errors report line and
/// column; schema errors report the offending field path. Duplicate label rows
/// are rejected with both row indices.
TeachingProblem problem_from_text(std::string_view text, const std::string& source = "<input>");

void save_problem(const std::filesystem::path& path, const TeachingProblem& problem);
TeachingProblem load_problem(const std::filesystem::path& path);

Json to_json(const Transcript& transcript);
Transcript transcript_from_json(const Json& doc);

Json to_json(const LearnerSpec& learner);
LearnerSpec learner_from_json(const Json& doc);
Json to_json(const ConstraintSpec& constraint);
ConstraintSpec constraint_from_json(const Json& doc);

/// Non-finite values are written as strings ("inf"); absent values as null.
Json to_json(const DiagnosticsReport& report);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace alteach

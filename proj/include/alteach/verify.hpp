#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "alteach/oracles.hpp"
#include "alteach/problem.hpp"

namespace alteach {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
  /// Informational probes are printed but never change the exit status.
  bool informational = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;

  bool passed() const;
};

std::string format_report(const SuiteReport& report);

inline constexpr const char* kCounterexampleFixture = "gbs_counterexample.json";
inline constexpr const char* kChainFixture = "chain_family_k1.json";

/// Search settings that reproduce the pinned GBS counterexample fixture.
CounterexampleSearch counterexample_search_config();

/// Replays the pinned fixtures in `dir`.
SuiteReport verify_fixtures(const std::filesystem::path& dir);

/// OPT^T <= OPT^{T+AL} <= 2 OPT^T on `count` random problems and the GBS
/// balanced-or-small dichotomy on `dichotomy_count` more.
SuiteReport verify_lemmas(std::size_t count, std::size_t dichotomy_count, std::uint64_t seed);

/// Diagnostic ranges, the coherence lower bound on rho^g and a soundness probe
/// of the indicative coherence bound, on `count` random enumerable problems.
SuiteReport verify_bounds(std::size_t count, std::uint64_t seed);

/// Random enumerable problem used by the property suites: |X| <= max_x, |H| <= max_h.
TeachingProblem random_small_problem(std::uint64_t seed, std::size_t max_x, std::size_t max_h);

}  // namespace alteach

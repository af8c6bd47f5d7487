#pragma once

// Seeded property suites. Trial i of a run with seed s uses seed s + i, so
// results do not depend on scheduling.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace envlab {

struct TrialOutcome {
  bool passed = true;
  /// Worst residual observed in the trial (0 when not meaningful).
  double residual = 0.0;
  std::string detail;
};

struct SuiteOptions {
  int trials = 100;
  std::uint64_t seed = 42;
  /// 0: one worker per hardware thread.
  int threads = 0;
};

struct SuiteResult {
  std::string suite;
  int trials = 0;
  int passed = 0;
  double worst_residual = 0.0;
  /// Details of the first failing trials, in trial order.
  std::vector<std::string> failures;
  long long wall_time_ms = 0;
  /// Tolerances used by the suite, by name.
  std::vector<std::pair<std::string, double>> tolerances;

  int failed() const { return trials - passed; }
  bool ok() const { return trials > 0 && passed == trials; }
};

using TrialFunction = std::function<TrialOutcome(std::uint64_t seed, int index)>;

struct Suite {
  std::string name;
  std::string description;
  int default_trials = 100;
  std::vector<std::pair<std::string, double>> tolerances;
  TrialFunction trial;
};

const std::vector<Suite>& suites();
std::vector<std::string> suite_names();
/// Throws UsageError listing the known suites.
const Suite& find_suite(const std::string& name);

SuiteResult run_suite(const Suite& suite, const SuiteOptions& options);
SuiteResult run_suite(const std::string& name, const SuiteOptions& options);

nlohmann::json to_json(const SuiteResult& result);

}  // namespace envlab

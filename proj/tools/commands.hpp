#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <envlab/io.hpp>

namespace envlab::cli {

enum ExitCode : int { kOk = 0, kVerificationFailure = 1, kUsage = 2, kNonConvergence = 3 };

struct CommonOptions {
  std::string space_path;
  std::string subspace_path;
  std::optional<double> p;
  std::optional<double> tol;
  std::uint64_t seed = 42;
  int trials = 0;
  std::string out;
  std::string suite;
};

struct RunReport {
  std::string command;
  Json inputs = Json::object();
  Json outputs = Json::object();
  std::uint64_t seed = 0;
  Json tolerances = Json::object();
  long long wall_time_ms = 0;
  int exit_code = kOk;

  Json to_json() const;
};

/// ENVLAB_SEED if set and valid, otherwise 42.
std::uint64_t default_seed();

RunReport cmd_env(const CommonOptions& opt);
RunReport cmd_verify(const CommonOptions& opt, int threads);
RunReport cmd_c2(const CommonOptions& opt, const std::string& grid);
RunReport cmd_proj(const CommonOptions& opt);
RunReport cmd_pushout(const CommonOptions& opt);
RunReport cmd_ergodic(const CommonOptions& opt, const std::string& operator_path, const std::string& method,
                      long long max_iter);

}  // namespace envlab::cli

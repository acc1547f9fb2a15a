#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cookiewalk::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kRuntimeError = 1, kUsageError = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  double epsilon = 0.75;
  double p = 0.75;
  std::string variant;  // empty: homogeneous when M is set, else counterexample
  std::optional<int> M;
  std::optional<int> n;
  std::optional<std::int64_t> K;
  std::optional<std::int64_t> K_max;
  std::uint64_t steps = 0;     // 0: command default
  std::uint64_t step_cap = 0;  // 0: command default
  std::uint64_t replicas = 0;  // 0: command default
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> env_seed;
  std::int64_t lo = -50;
  std::int64_t hi = 50;
  std::uint64_t every = 1;
  double c = 0.04;
  std::vector<std::uint64_t> checkpoints;
  std::vector<int> M_list;
  double max_censored_fraction = 1.0;
  bool plot = false;
  std::string out_path = "out";
  unsigned threads = 0;

  /// Effective configuration as `key=value` tokens; out_path and threads are
  /// excluded since they do not affect results.
  std::string to_comment() const;
  /// Inverse of to_comment: rebuilds the configuration from a CSV header line.
  static RunConfig from_comment(const std::string& line);

  bool operator==(const RunConfig&) const;
};

std::string usage();

/// Parses arguments (without the program name). Throws UsageError.
RunConfig parse_config(const std::vector<std::string>& args);

/// Fills command-specific defaults and validates ranges. Throws UsageError.
RunConfig resolve(RunConfig cfg);

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// parse_config, resolve and dispatch with exit-code mapping.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cookiewalk::cli

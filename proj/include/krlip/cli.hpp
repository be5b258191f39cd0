#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace krlip::cli {

inline constexpr const char* kToolName = "krlip";
inline constexpr const char* kVersion = "0.1.0";

enum class Command { Validate, Gen, Kr, Lip, Decompose, Besov, Hajlasz, Doubling, Embed };
enum class Format { Json, Csv };

struct RunConfig {
  Command command = Command::Validate;
  std::string action;  // subcommand word, e.g. "norm", "dist", "verify", "check"

  std::string space_path;
  std::vector<std::string> measure_paths;
  std::vector<std::string> field_paths;
  std::string decomposition_path;
  std::string out_path;

  std::optional<double> alpha;
  double s = 0.5;
  double p = 2.0;
  std::optional<double> delta;
  std::vector<double> delta_schedule;
  std::uint64_t seed = 0;
  int n = 0;
  std::string kind;  // space kind for gen, embedding kind for embed
  bool balanced_only = false;
  unsigned jobs = 1;
  Format format = Format::Json;

  std::optional<double> C;
  std::optional<double> Q;
  std::optional<double> L;
  std::vector<std::string> subset;
  int depth = 0;
  std::optional<double> r0;
};

struct RunOutcome {
  int exit_code = 0;
  std::string output;  // for stdout
  std::string error;   // for stderr
};

/// Dispatches one invocation. Never throws: domain errors give exit code 1,
/// I/O and parse errors exit code 2, both with an error object in `error`.
RunOutcome run(const RunConfig& config);

/// Timestamp-free part of a report, for determinism checks.
std::string results_only(const std::string& report);

}  // namespace krlip::cli

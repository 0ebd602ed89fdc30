#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cloak {

inline constexpr const char* kToolVersion = "1.0.0";

/// Exit codes shared by every command.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,     // unreadable or invalid configuration, bad flags
  kExitTrend = 2,     // a sweep row failed to decrease
  kExitSolver = 3,    // a solver error (resonance, stiffness, range)
};

struct RunManifest {
  std::string command;                  // params | stack | cell-verify | dtn | sweep
  std::string config_path;              // required except for cell-verify
  std::string output_path;              // empty: standard output
  bool sequential = false;              // bitwise reproducible single-thread run
  std::optional<std::string> inner_shell;  // "paper" | "pushforward" override
  std::optional<std::string> vary;         // sweep parameter
  std::vector<double> values;              // sweep values
  std::optional<std::string> format;       // "csv" | "json"; default by extension
  std::string tool_version = kToolVersion;
};

/// Executes one command. Diagnostics go to `err`; the document goes to the
/// output path or `out`.
int run(const RunManifest& manifest, std::ostream& out, std::ostream& err);

}  // namespace cloak

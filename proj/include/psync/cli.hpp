#pragma once

#include <string>
#include <utility>
#include <vector>

namespace psync::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kUsage = 2, kInternal = 3 };

struct CommandOutcome {
  int exit_code = kOk;
  std::string out;  // stdout payload, already formatted for the chosen --format
  std::string err;  // diagnostics for stderr
  std::vector<std::pair<std::string, std::string>> summary;
};

/// Runs one command line (without the program name).
CommandOutcome run(const std::vector<std::string>& args);

}  // namespace psync::cli

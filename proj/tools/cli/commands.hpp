#pragma once

// The four experiment commands. Each writes a CSV table (header row plus a
// "# config-hash" comment) to `out`, one summary line per check to `log`, and
// returns 0 when every check passes and 1 otherwise.

#include <ostream>
#include <string>
#include <vector>

#include "cli/config.hpp"

namespace logdamp::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// One verdict of a command's self-check.
struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

int run_special(const RunConfig& config, std::ostream& out, std::ostream& log);
int run_lemmas(const RunConfig& config, std::ostream& out, std::ostream& log);
int run_decay(const RunConfig& config, std::ostream& out, std::ostream& log);
int run_profile(const RunConfig& config, std::ostream& out, std::ostream& log);

int run_command(const RunConfig& config, std::ostream& out, std::ostream& log);

/// Full entry point: argv parsing, config resolution, output file handling and
/// exit-code mapping (2 for usage, config and domain errors).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace logdamp::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace otto::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfigError = 2,
  kExitInvariantError = 3,
};

// Runs the command line `args` (without the program name). Diagnostics go
// to `err`; CSV or summary text goes to `out` unless --out names a file.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

struct RoundRange {
  int first = 0;
  int last = 0;
};

// "7" or "0..10"
RoundRange parse_round_range(const std::string& text);

struct FrequencyGrid {
  double start_mhz = 0.0;
  double stop_mhz = 0.0;
  double step_mhz = 0.0;
};

// "start:stop:step" in MHz
FrequencyGrid parse_frequency_grid(const std::string& text);

std::string sha256_hex(const std::string& data);

// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomically(const std::string& path, const std::string& contents);

}  // namespace otto::cli

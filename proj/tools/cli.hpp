#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ghk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitBreach = 1;
inline constexpr int kExitInvalid = 2;

/// Runs the command line `args` (without the program name) and returns the
/// process exit code. Output goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ghk::cli

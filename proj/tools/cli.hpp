#pragma once

// Command-line front end. Kept as a function over an argument vector and two
// streams so tests can drive it without spawning processes.
//
// Exit codes: 0 success, 2 invalid flags or parameters, 3 solver failure.

#include <ostream>
#include <string>
#include <vector>

namespace levymet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitSolver = 3;

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace levymet::cli

#pragma once

// Command-line front end. Exit codes: 0 success, 1 domain or validation
// failure, 2 input or parse failure.

#include <ostream>
#include <string>
#include <vector>

namespace tate::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_domain = 1;
inline constexpr int exit_input = 2;

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tate::cli

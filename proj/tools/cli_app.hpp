#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gll::cli {

// Exit codes: 0 ok, 2 usage or parse error, 3 numeric failure.
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_numeric = 3;

/// Runs one command line (without the program name), writing results to
/// `out` and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gll::cli

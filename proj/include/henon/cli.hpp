#pragma once

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

namespace henon {

enum ExitCode : int {
    kSuccess = 0,
    kAssertionFailed = 1,   // bound, monotonicity, two-route or form-comparison failure
    kNonConvergence = 2,
    kUsageError = 3,
};

/// "start:stop:step" (inclusive within 1e-12), "a,b,c" or a single value.
/// Throws std::invalid_argument on malformed or non-increasing input.
std::vector<double> parse_range(const std::string& spec);

/// Exit code for an exception escaping a subcommand.
int exit_code_for(const std::exception& error);

/// Subcommands: solve, spectrum, morse, sweep, verify. Failures write a
/// one-line JSON diagnostic to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace henon

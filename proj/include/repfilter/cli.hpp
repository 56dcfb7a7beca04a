#pragma once

#include <iosfwd>

namespace repfilter {

// Exit codes shared by every subcommand.
enum ExitCode : int {
    kExitOk = 0,
    kExitInputError = 2,  // malformed input, unknown profile, IO failure
    kExitNoTrust = 3,     // trust: neither direct nor inferred trust exists
};

// Entry point for the `repfilter` tool. Subcommands: replay, simulate,
// trust, stats, export-weights.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace repfilter

#pragma once

#include <iosfwd>

namespace pvg {

/// Process exit codes of the `pvg` tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,       ///< bad flags or config document
    kExitParse = 3,        ///< malformed input file
    kExitComputation = 4,  ///< pipeline failure (e.g. disconnected graph)
    kExitIo = 5,
};

/// Entry point for `pvg generate|build|metrics|sweep`. Human-readable
/// progress goes to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace pvg

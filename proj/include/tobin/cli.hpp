#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tobin {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 1,    ///< usage or configuration error, including a missing config file
    kExitNumerical = 2, ///< non-convergence, truncation, no admissible rest point
    kExitIo = 3,
};

/// Runs one subcommand. `args` excludes the program name. JSON goes to `out` unless
/// redirected to a file; diagnostics go to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tobin

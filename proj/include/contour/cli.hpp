#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace contour {

/// Process exit codes of the command-line front end.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitBadInput = 2,  // inadmissible state, infeasible decomposition, budget exceeded
    kExitViolation = 3,
};

/// Runs one CLI invocation; `args` excludes the program name. Documents go to
/// `out` (or the --out file), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace contour

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mpb {

/// Exit codes: 0 success, 1 a verified claim failed, 2 invalid input.
enum ExitCode : int { kExitOk = 0, kExitClaimViolated = 1, kExitInputError = 2 };

/// Runs the command line `args` (args[0] is the program name). Errors are
/// written to `err` as "error: <kind>: <message>".
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mpb

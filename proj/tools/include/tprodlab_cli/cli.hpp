#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tprod::cli {

enum ExitCode : int { kPass = 0, kInequalityFailure = 1, kUsage = 2 };

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// the --out file when given, else to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tprod::cli

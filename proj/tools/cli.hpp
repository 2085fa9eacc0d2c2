#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cosetq::cli {

/// Exit codes of every subcommand.
enum ExitCode : int { kSuccess = 0, kMismatch = 1, kInvalidInput = 2 };

/// Runs the command line `args` (without the program name), writing results to `out` and
/// diagnostics to `err`. Returns one of ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cosetq::cli

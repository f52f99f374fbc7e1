#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wb {

/// Exit codes of the command line tool.
enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitUsage = 2, kExitDomain = 3, kExitInternal = 4 };

/// Runs the tool on args (without the program name). JSON goes to out,
/// "error: <Variant>: message" lines to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace wb

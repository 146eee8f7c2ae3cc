#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace formplan::cli {

enum ExitCode : int { kSuccess = 0, kInternalError = 1, kUsageError = 2 };

/// Entry point of the `formplan` tool. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace formplan::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace udeq::cli {

enum ExitCode : int { ok = 0, invalid = 1, failed = 2, parse_error = 3 };

/// Runs one command line (without the program name), writing the report to
/// `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace udeq::cli

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pomodel::cli {

enum ExitCode { kOk = 0, kFailed = 1, kUsage = 2 };

/// Runs one command line. args excludes the program name. Reports go to files
/// under --out and a summary goes to out; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pomodel::cli

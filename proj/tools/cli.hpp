#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace symchain::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kInputError = 2 };

/// Runs one command line (args exclude the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace symchain::cli

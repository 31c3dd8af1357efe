#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace acgame::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationError = 1,
  kRuntimeError = 2,
  kVerificationFailure = 3,
};

// Runs one command line (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace acgame::cli

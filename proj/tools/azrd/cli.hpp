#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace azrd {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kTheoremFailure = 1,
  kBadInput = 2,
  kZeroPsi = 3,
  kAlphaOne = 4,
};

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace azrd

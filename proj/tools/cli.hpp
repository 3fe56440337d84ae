#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace frhs::cli {

/// Stable exit codes.
enum Exit : int {
  kPass = 0,
  kGeometricFail = 1,
  kInputError = 2,
  kInconclusive = 3,
  kPrecondition = 4,
};

/// Runs the workbench CLI with argv-style arguments (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);


}  // namespace frhs::cli

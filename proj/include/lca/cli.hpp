#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lca::cli {

enum ExitCode : int {
  kPositive = 0,
  kFailure = 1,
  kUsage = 2,
  kParse = 3,
  kDomainMismatch = 4,
  kUnsupported = 5,
  kResourceLimit = 6,
  kNegative = 10,
  kUnknown = 20,
};

/// Runs the command line `args` (args[0] is the program name). Results go to
/// `out` unless an output file is named; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lca::cli

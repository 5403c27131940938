#pragma once

#include <ostream>

namespace polyadica::cli {

enum ExitCode : int {
  kOk = 0,
  kNegative = 1,     // countermodel, failed axiom, no interpolant
  kUnknown = 2,      // budget or resource limit
  kUsage = 3,        // bad flags or malformed input
  kConsistency = 4,  // two sides of a theorem disagree
};

/// Runs one `polyadica` invocation. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace polyadica::cli

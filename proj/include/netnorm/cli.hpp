#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace netnorm::cli {

inline constexpr const char* kToolName = "netnorm";
inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,         // lemma suite failed or unexpected error
  kInvalidInput = 2,    // validation failure or malformed instance
  kBadParameter = 3,    // parameter or budget error, bad command line
  kEstimatorFailed = 4  // sparsification ran out of retries
};

/// Runs one command line (args[0] is the program name). The report goes to
/// `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace netnorm::cli

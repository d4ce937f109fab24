#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qcantor::cli {

enum ExitCode : int {
  kOk = 0,
  kDomainError = 1,
  kBudgetExhausted = 2,
  kUsage = 64,
  kMalformedRational = 65,
};

/// Runs one command line. `args` excludes the program name. Artifacts go to
/// `out` (or --output-path), structured errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// One CSV field, quoted per RFC 4180 when it holds a comma, quote or line
/// break.
std::string csv_field(const std::string& value);

}  // namespace qcantor::cli

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace irrgen {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitBudget = 2,
  kExitNotCertified = 3,
  kExitMixed = 4,
  kExitUsage = 64,
  kExitData = 65,
  kExitInternal = 70,
};

/// args excludes the program name. Results go to out, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace irrgen

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dfactor/config.h"

namespace dfactor {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitValidation = 2,
  kExitCertification = 3,
  kExitNonConvergence = 4,
};

/// info, eval-delta, find-apoints, verify-rvm, landau, equidist, mean-value, catalog.
const std::vector<std::string>& command_names();

/// Runs one subcommand and writes its table to out. Errors are reported on
/// err with the command name; the return value is the process exit code.
int run_command(const std::string& cmd, const RunConfig& cfg, std::ostream& out,
                std::ostream& err);

int exit_code_for(const std::exception& e);

}  // namespace dfactor

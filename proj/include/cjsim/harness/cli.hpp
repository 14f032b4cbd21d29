#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cjsim::harness {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitInfeasible = 3,
    kExitValidationFailed = 4,
};

/// Entry point of the command-line tool.  args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cjsim::harness

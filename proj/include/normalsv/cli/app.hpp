#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace normalsv::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitVerifyFailed = 1,
    kExitConfigError = 2,
    kExitRuntimeError = 3,
};

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace normalsv::cli

#pragma once

#include <iosfwd>

namespace pvfreq {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitValidation = 1,
    kExitRuntime = 2,
    kExitComplianceFail = 3,
};

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace pvfreq

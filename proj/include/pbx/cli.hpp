#pragma once

#include <iosfwd>

namespace pbx {

/// Exit statuses of the pbox command.
enum ExitCode : int { kExitOk = 0, kExitInvalid = 1, kExitParse = 2, kExitTooLarge = 3 };

/// Entry point of the pbox command, writing to the given streams.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pbx

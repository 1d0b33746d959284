#pragma once

#include <iosfwd>

namespace gext {

// Exit codes of the gext command.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitUnknown = 3;

/// Runs the command line; reports go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gext

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace addchain::cli {

/// Exit codes: 0 success / valid chain, 1 invalid input or failed
/// validation, 2 internal error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitInternal = 2;

/// Parses `args` (args[0] is the program name) and runs one subcommand.
/// Results go to `out`, diagnostics to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace addchain::cli

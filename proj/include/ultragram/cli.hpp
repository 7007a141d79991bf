#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ultragram {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitMalformedInput = 2;
inline constexpr int kExitNotUltrametric = 3;
inline constexpr int kExitNumeric = 4;

/// Runs one CLI invocation. args excludes the program name. Reports go to
/// out, diagnostics and witnesses to err; "-" as input reads from in.
int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err);

}  // namespace ultragram

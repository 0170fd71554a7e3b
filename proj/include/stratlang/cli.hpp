#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace stratlang::cli {

// Exit statuses of the command-line tool.
inline constexpr int kExitTrue = 0;
inline constexpr int kExitFalse = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 3;
inline constexpr int kExitInput = 4;
inline constexpr int kExitInternal = 5;

/// Runs one invocation. `args` excludes the program name. The play command
/// reads the human's moves from `in`.
int run(std::span<const std::string> args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace stratlang::cli

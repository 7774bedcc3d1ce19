#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polar {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitVerify = 4;

// Runs one tool invocation. args excludes the program name.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace polar

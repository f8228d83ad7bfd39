#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dpbloom::cli {

// Exit codes: 0 success, 1 domain error, 2 I/O error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitIo = 2;

// Runs one `dpbloom` invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dpbloom::cli

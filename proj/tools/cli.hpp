#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace covint::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitMath = 3;
inline constexpr int kExitIo = 4;

/// Runs one command line (without the program name). Reports go to out,
/// diagnostics to err; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace covint::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace blotto::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitRefuted = 2;

/// Parses `args` (without the program name), runs one subcommand and writes
/// its report to --out or `out`. Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blotto::cli

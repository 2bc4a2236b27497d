#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sizebias::cli {

/// Exit codes: 0 success, 1 internal error, 2 usage or validation error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

/// Runs one invocation. `args` excludes the program name. The result goes to
/// `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sizebias::cli

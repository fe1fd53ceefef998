#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;

/// Runs one `hs` invocation. `args` excludes the program name. Returns the
/// process exit status: 0 on success, 1 on a hard error, 2 on a usage error.
int cli_dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace hs::cli

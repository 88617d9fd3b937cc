#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qlpa::cli {

/// Entry point of the `qlpa` tool. `args` excludes the program name. A path
/// of "-" reads from `in` or writes to `out`.
///
/// Exit codes: 0 success, 1 domain error or failed verification (JSON
/// {"error": kind, "message": ...} on `err`), 2 bad usage.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace qlpa::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace airel::cli {

// Full command-line entry point. `args` excludes the program name. Returns
// the process exit code: 0 success, 1 input/validation/usage error,
// 2 internal numerical failure. Payload goes to `out` (or the --out file),
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace airel::cli

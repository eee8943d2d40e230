#pragma once

#include <iosfwd>

namespace effects::cli {

// Full command-line surface.  Writes program output to `out` (or the file
// given with --out), diagnostics to `err`; returns the process exit code:
// 0 success / coexistent / all suites pass, 1 not coexistent / suite failure,
// 2 invalid input, 3 marginal verdict.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace effects::cli

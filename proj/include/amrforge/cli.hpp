#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace amrforge {

// Runs the corpus tool. `args` excludes the program name. Normal and
// diagnostic output go to `out`/`err` so tests can capture both.
// Exit codes: 0 success, 1 validation or data error, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace amrforge

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adlab::cli {

// Runs the command line given as plain arguments (no program name). Reports
// go to `out`, diagnostics and progress to `err`. Returns the process exit
// code: 0 success, 2 validation failure, 3 budget exhausted (partial result).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adlab::cli

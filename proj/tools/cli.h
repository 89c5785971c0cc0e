#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace robsel::cli {

// Runs one command line (without the program name) against the given
// streams. Returns the process exit code: 0 success, 1 infeasibility or
// guard, 2 usage or parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace robsel::cli

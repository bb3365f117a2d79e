#pragma once

#include <string>
#include <vector>

namespace swe1d {

// Whole command-line tool as a testable function. args excludes the program
// name. Returns the process exit code: 0 success, 2 configuration or parse
// problem, 3 blowup during time stepping.
int run_cli(const std::vector<std::string>& args);

}  // namespace swe1d

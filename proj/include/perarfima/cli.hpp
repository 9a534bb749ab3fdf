#pragma once

#include <string>
#include <vector>

namespace perarfima::cli {

// Runs the command-line driver. Exit codes: 0 success, 2 validation or usage
// error, 3 numerical failure.
int run(int argc, const char* const* argv);

// Same, for in-process callers; args excludes the program name.
int run(const std::vector<std::string>& args);

}  // namespace perarfima::cli

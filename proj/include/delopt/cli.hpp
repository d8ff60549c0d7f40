#pragma once

#include <string>
#include <vector>

namespace delopt {

// Command line entry point behind the delopt binary. Returns the process
// exit status; all errors are reported on stderr rather than thrown.
int run_cli(int argc, const char* const* argv);

// Convenience overload for tests: args without the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace delopt

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace xregex::cli {

// Runs the command line (without the program name) and returns the exit
// status: for `match`, 0 when some record matched, 1 when none did, and 2 on
// any error; other subcommands return 0 or 2.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xregex::cli

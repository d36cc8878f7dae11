#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace crnepi::cli {

// args exclude the program name; returns the process exit code
// (0 ok, 2 input error, 3 analysis error, 4 numerical failure).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crnepi::cli

#pragma once

#include <string>
#include <vector>

namespace cuttree::cli {

// Entry point of the command line tool; argv without the program name.
int run(const std::vector<std::string>& args);

}  // namespace cuttree::cli

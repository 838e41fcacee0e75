#include <vector>

#include "cuttree/cli.hpp"

int main(int argc, char** argv) {
  return cuttree::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}

#include <iostream>
#include <string>
#include <vector>

#include "sphier/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sphier::cli::run(args, std::cout, std::cerr);
}

#include <iostream>
#include <vector>

#include "tcx/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tcx::run_cli(args, std::cout, std::cerr);
}

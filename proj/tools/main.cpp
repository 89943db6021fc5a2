#include <iostream>
#include <vector>

#include "spatlang/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return spatlang::run_cli(args, std::cout, std::cerr, std::cin);
}

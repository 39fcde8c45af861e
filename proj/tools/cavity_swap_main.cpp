#include <iostream>
#include <string>
#include <vector>

#include "cavity_swap/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cavity_swap::cli::run_cli(args, std::cout, std::cerr);
}

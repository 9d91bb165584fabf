#include <iostream>

#include "irrgen/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return irrgen::run_cli(args, std::cout, std::cerr);
}

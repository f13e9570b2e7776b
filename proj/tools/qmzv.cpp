#include <iostream>

#include "qmzv/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qmzv::run_cli(args, std::cout, std::cerr);
}

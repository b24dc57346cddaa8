#include <iostream>
#include <string>
#include <vector>

#include "ftnorm/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ftn::run_cli(args, std::cout, std::cerr);
}

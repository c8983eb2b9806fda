#include <iostream>
#include <string>
#include <vector>

#include "mpbetti/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return mpb::run_cli(args, std::cout, std::cerr);
}

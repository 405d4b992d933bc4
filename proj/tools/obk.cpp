#include <iostream>
#include <string>
#include <vector>

#include "obk/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return obk::run_cli(args, std::cout, std::cerr);
}

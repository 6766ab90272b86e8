#include <iostream>
#include <vector>

#include "fuselab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return fuselab::run_command(args, std::cout);
}

#include <iostream>

#include "hodgelab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hodgelab::run(args, std::cout, std::cerr);
}

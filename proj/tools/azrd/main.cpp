#include <iostream>

#include "azrd/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return azrd::run(args, std::cout, std::cerr);
}

#include <iostream>

#include "zetadiff/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return zetadiff::cli::run(args, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "qlpa/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qlpa::cli::run(args, std::cin, std::cout, std::cerr);
}

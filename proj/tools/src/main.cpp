#include <iostream>

#include "hs_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hs::cli::cli_dispatch(args, std::cin, std::cout, std::cerr);
}

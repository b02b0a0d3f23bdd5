#include <iostream>
#include <string>
#include <vector>

#include "citespectro/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return citespectro::cli::run_cli(args, std::cout, std::cerr);
}

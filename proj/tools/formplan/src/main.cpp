#include <iostream>

#include "formplan_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return formplan::cli::run_cli(args, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "ewt/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ewt::run_cli(args, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "f1kgw/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return f1kgw::run_cli(std::move(args), std::cout, std::cerr);
}

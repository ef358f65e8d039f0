#include <iostream>
#include <string>
#include <vector>

#include "cricrules/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cricrules::run_cli(args, std::cerr);
}

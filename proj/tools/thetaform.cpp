#include <iostream>
#include <string>
#include <vector>

#include "thetaform/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return thetaform::run_cli(args, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "mvcs/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return mvcs::cli::run(args, std::cout, std::cerr);
}

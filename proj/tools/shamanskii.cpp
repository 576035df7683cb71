#include <iostream>
#include <string>
#include <vector>

#include "shamanskii/cli.hpp"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return shamanskii::cli::run(args, std::cout, std::cerr);
}

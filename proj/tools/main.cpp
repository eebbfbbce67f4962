#include <iostream>

#include "laminata/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return laminata::cli::run(args, std::cout, std::cerr);
}

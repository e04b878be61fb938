#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gjpo::cli::run(args, std::cout, std::cerr, gjpo::cli::Environment::from_process());
}

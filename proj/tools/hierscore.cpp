#include <iostream>

#include "hierscore/cli.hpp"

int main(int argc, char** argv) {
  return hierscore::run_cli(argc, argv, std::cout, std::cerr);
}

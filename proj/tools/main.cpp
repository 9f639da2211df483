#include <iostream>

#include "gimforge/cli.hpp"

int main(int argc, char** argv) {
  return gimforge::cli::run(argc, argv, std::cout, std::cerr);
}

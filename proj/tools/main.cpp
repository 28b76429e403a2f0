#include <iostream>

#include "grover_qa/cli.hpp"

int main(int argc, char** argv) {
  return grover_qa::cli::run(argc, argv, std::cout, std::cerr);
}

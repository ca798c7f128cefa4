#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  return mp2s::cli::run(argc, argv, std::cout, std::cerr);
}

#include "nullpart/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return nullpart::cli::run(argc, argv, std::cout, std::cerr);
}

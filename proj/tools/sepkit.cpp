#include <iostream>

#include "sepkit/cli.hpp"

int main(int argc, char** argv) {
  return sepkit::cli::run(argc, argv, std::cout, std::cerr);
}

#include <iostream>

#include "tprodlab_cli/cli.hpp"

int main(int argc, char** argv) {
  return tprod::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

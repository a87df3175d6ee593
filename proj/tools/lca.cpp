#include <iostream>

#include "lca/cli.hpp"

int main(int argc, char** argv) {
  return lca::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

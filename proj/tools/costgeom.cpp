// Command-line front end. See README.md for the subcommands.
#include <iostream>

#include "costgeom/cli.hpp"

int main(int argc, char** argv) {
  return costgeom::cli::run_cli(argc, argv, std::cout, std::cerr);
}

#include <cstdio>
#include <iostream>

#include <unistd.h>

#include "cli/app.hpp"

int main(int argc, char** argv) {
  return casimir::cli::run_cli(argc, argv, std::cout, std::cerr, isatty(fileno(stdout)) != 0);
}

#include <unistd.h>

#include <iostream>

#include "stt/cli/cli.hpp"

int main(int argc, char** argv) {
  return stt::cli::run(argc, argv, std::cout, std::cerr, isatty(STDOUT_FILENO) != 0);
}

#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gapwise::cli::run_main(args, gapwise::cli::environment_from_process(), std::cout, std::cerr);
}

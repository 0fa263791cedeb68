#include <iostream>
#include <string>
#include <vector>

#include "nichols/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const nichols::CliResult result = nichols::run_cli(args);
  std::cout << result.output;
  return result.exit_code;
}

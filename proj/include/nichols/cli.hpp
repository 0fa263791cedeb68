#pragma once

#include <string>
#include <vector>

namespace nichols {

// Outcome of one command-line invocation: everything the command printed and
// the process exit code (0 success/agreement, 2 usage or validation error,
// 3 dimension-method discrepancy).
struct CliResult {
  int exit_code = 0;
  std::string output;
};

// Runs the command line given as argv[1..] (no program name). All output is
// captured rather than written to stdout so invocations are testable; the
// same arguments always produce byte-identical output.
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace nichols

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace phasekit {

// One CLI invocation's configuration after flag parsing.
struct RunConfig {
  std::string command;
  std::string code;    // registry name, or path to a code file
  std::string errors;  // error-set spec text
  int bound = 4;
  std::string format = "text";  // "text" | "json"
  int seed = 0;
  int samples = 5;  // angles sampled per numeric cross-check
};

// Runs one invocation (argv without the program name) against the given
// streams. Exit codes: 0 success or Sat, 1 reproduction mismatch,
// 2 unsat-within-bound, 3 invalid input.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace phasekit

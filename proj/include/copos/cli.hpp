#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace copos {

struct RunConfig {
  std::uint64_t seed = 1;
  double tol = 1e-9;
  int probes = 2048;
  std::string output;  // empty = stdout
};

// Runs one subcommand. args excludes the program name. Exit code contract:
// 0 = in cone / success, 1 = out of cone / counterexample, 2 = inconclusive,
// 3 = usage error or malformed input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace copos

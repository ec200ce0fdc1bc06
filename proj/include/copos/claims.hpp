#pragma once

#include <string>
#include <vector>

#include "copos/json_io.hpp"

namespace copos {

// Nine seeded probes of the load-bearing statements behind the library.
// Refutation is a reportable finding, not a failure: some of the probed
// statements have genuine gaps, and the suite's job is to map them.
enum class ClaimStatus { Supported, Refuted, Inconclusive };

const char* claim_status_name(ClaimStatus s);

struct ClaimResult {
  std::string id;
  std::string title;
  ClaimStatus status;
  int trials = 0;
  Json details;
};

struct ClaimsConfig {
  uint64_t seed = 1;
  int probes = 512;
  double tol = 1e-9;
};

std::vector<ClaimResult> run_claims(const ClaimsConfig& cfg);
Json claims_to_json(const std::vector<ClaimResult>& rs);

}  // namespace copos

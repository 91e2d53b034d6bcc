#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bfpqc {

struct CheckResult {
  std::string id;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  // Largest half rank swept by the promised/outside checks (F_2n and G_2m up
  // to n, m = max_half_rank). Cluster sweeps derive their caps from it but
  // never exceed total rank 12.
  int max_half_rank = 3;
};

// Runs every module invariant and returns one result per check.
std::vector<CheckResult> run_standard_suite(const VerifyOptions& options = {});

// Writes one PASS/FAIL line per check and returns the failure count.
int write_report(const std::vector<CheckResult>& results, std::ostream& out);

}  // namespace bfpqc

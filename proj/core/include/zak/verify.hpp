#pragma once

#include <string>
#include <vector>

namespace zak {

/// Deliberate misconfigurations for exercising the verify suites themselves.
struct VerifyFaults {
  bool projection_zero_mode_identity = false;
};

struct VerifyResult {
  std::string group;
  bool pass = false;
  std::string detail;
};

/// Invariant suites of all modules at 8^3/16^3 scale: transforms, projection
/// algebra, propagator, wave solver, dealiasing and norms, persistence.
std::vector<VerifyResult> run_verify(const VerifyFaults& faults = {});

}  // namespace zak

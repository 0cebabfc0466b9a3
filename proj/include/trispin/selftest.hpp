#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace trispin {

struct SelfTestResult {
  std::string name;
  bool passed = false;
  double value = 0;      ///< worst observed error (or fidelity deficit)
  double tolerance = 0;
};

/// Runs the model invariants at desk sizes with a fixed seed and reports one
/// result per property. Deterministic for a given seed.
std::vector<SelfTestResult> run_selftest(std::uint64_t seed = 20110301);

}  // namespace trispin

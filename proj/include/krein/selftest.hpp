#pragma once

#include <string>
#include <vector>

namespace krein {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Randomized (fixed-seed) invariant checks across all modules.
std::vector<CheckResult> run_selftest();

}  // namespace krein

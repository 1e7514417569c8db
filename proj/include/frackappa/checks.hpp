#pragma once

#include <string>
#include <vector>

namespace frackappa {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

/// Fast invariant suite: operator structure, alpha = 1 analytic limits,
/// sum-rule identities, parity nulls and the three-level maximum.
std::vector<CheckResult> run_invariant_checks();

}  // namespace frackappa

#pragma once

// The cross-check suite behind `mapgen verify`: every acceptance property
// plus the route agreements that are not tied to a single criterion.

#include <functional>
#include <string>
#include <vector>

namespace mapgen {

struct CheckResult {
  int criterion;  // 1..8, or 0 for supporting checks
  std::string name;
  bool passed;
  std::string detail;
};

struct VerifyOptions {
  bool numeric = true;
  unsigned digits = 50;
  // called after each check, e.g. for progress output
  std::function<void(const CheckResult&)> on_result;
};

std::vector<CheckResult> run_verify(const VerifyOptions& opt);

}  // namespace mapgen

#pragma once

#include <string>
#include <vector>

namespace onbuy {

struct InvariantResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelfTestOptions {
  // Fault injection: breaks the threshold table before it is checked.
  bool corrupt_rho = false;
};

// The module invariants at reduced scale, in a fixed order.
std::vector<InvariantResult> run_selftest(const SelfTestOptions& options = {});

}  // namespace onbuy

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "onbuy/universe.hpp"

namespace onbuy {

struct Purchase {
  ItemId item = 0;
  double cost = 0.0;
};

struct StrategyOutcome {
  std::vector<Purchase> purchased;
  // Item ids forming the target structure; a subset of purchased.
  std::vector<ItemId> structure;
  double total_cost = 0.0;
  bool success = false;
  bool fallback_used = false;
  std::uint64_t inspections = 0;
  // Strategy-specific diagnostics (component counts, phase sizes, ...).
  std::map<std::string, double> stats;
};

}  // namespace onbuy

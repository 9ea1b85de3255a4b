#pragma once

#include <cstdint>
#include <vector>

#include "onbuy/universe.hpp"

namespace onbuy {

enum class HamiltonStatus { found, proven_absent, cutoff };

struct HamiltonResult {
  HamiltonStatus status = HamiltonStatus::cutoff;
  std::vector<Vertex> cycle;  // vertex order, starting at 0; closes back to 0
  std::uint64_t nodes = 0;
};

using Adjacency = std::vector<std::vector<Vertex>>;

// Backtracking search. For digraphs `out` holds out-neighbours and `in`
// in-neighbours; for graphs pass the same lists twice. Absence is reported
// as proven only when a degree or connectivity argument rules a cycle out
// or the search space was exhausted within the budget.
HamiltonResult find_hamilton_cycle(const Adjacency& out, const Adjacency& in, bool directed,
                                   std::uint64_t budget = 10'000'000);

HamiltonResult find_hamilton_cycle(const Adjacency& adj, std::uint64_t budget = 10'000'000);

}  // namespace onbuy

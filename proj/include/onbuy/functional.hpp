#pragma once

#include <cstdint>
#include <vector>

#include "onbuy/universe.hpp"

namespace onbuy {

// Digraph of arcs v -> f(v). Each weak component holds exactly one cycle
// with in-trees hanging off it.
struct FunctionalDigraph {
  std::vector<Vertex> f;
  std::vector<std::vector<Vertex>> cycles;  // each listed along f
  std::vector<std::int32_t> cycle_of;       // cycle index of v's component
  std::vector<char> on_cycle;
  std::uint32_t tree_vertices = 0;
  std::uint32_t components() const { return static_cast<std::uint32_t>(cycles.size()); }
};

// Throws std::invalid_argument unless f maps [0, n) into itself with no
// fixed point.
FunctionalDigraph decompose_functional(const std::vector<Vertex>& f);

}  // namespace onbuy

#include "onbuy/functional.hpp"

#include <stdexcept>

namespace onbuy {

FunctionalDigraph decompose_functional(const std::vector<Vertex>& f) {
  const auto n = static_cast<std::uint32_t>(f.size());
  for (Vertex v = 0; v < n; ++v) {
    if (f[v] >= n || f[v] == v) throw std::invalid_argument("f must map into [0,n) without fixed points");
  }
  FunctionalDigraph g;
  g.f = f;
  g.cycle_of.assign(n, -1);
  g.on_cycle.assign(n, 0);
  // 0 = new, 1 = on the current walk, 2 = resolved
  std::vector<char> state(n, 0);
  std::vector<Vertex> walk;
  for (Vertex s = 0; s < n; ++s) {
    if (state[s]) continue;
    walk.clear();
    Vertex v = s;
    while (state[v] == 0) {
      state[v] = 1;
      walk.push_back(v);
      v = f[v];
    }
    std::int32_t id;
    if (state[v] == 1) {
      // Closed a new cycle at v.
      id = static_cast<std::int32_t>(g.cycles.size());
      std::vector<Vertex> cyc;
      Vertex x = v;
      do {
        cyc.push_back(x);
        g.on_cycle[x] = 1;
        x = f[x];
      } while (x != v);
      g.cycles.push_back(std::move(cyc));
    } else {
      id = g.cycle_of[v];
    }
    for (Vertex w : walk) {
      state[w] = 2;
      g.cycle_of[w] = id;
    }
  }
  for (Vertex v = 0; v < n; ++v) g.tree_vertices += g.on_cycle[v] ? 0 : 1;
  return g;
}

}  // namespace onbuy

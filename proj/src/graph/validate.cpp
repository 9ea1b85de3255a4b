#include "onbuy/validate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "onbuy/graph.hpp"

namespace onbuy {

namespace {

bool in_range(const std::vector<Endpoints>& edges, std::uint32_t n) {
  return std::all_of(edges.begin(), edges.end(),
                     [n](const Endpoints& e) { return e.u < n && e.v < n && e.u != e.v; });
}

std::pair<Vertex, Vertex> key(const Endpoints& e) { return {std::min(e.u, e.v), std::max(e.u, e.v)}; }

bool distinct_undirected(const std::vector<Endpoints>& edges) {
  std::set<std::pair<Vertex, Vertex>> seen;
  for (const auto& e : edges) {
    if (!seen.insert(key(e)).second) return false;
  }
  return true;
}

}  // namespace

bool is_spanning_tree(const std::vector<Endpoints>& edges, std::uint32_t n) {
  if (n == 0 || edges.size() != n - 1 || !in_range(edges, n)) return false;
  DisjointSets d(n);
  for (const auto& e : edges) {
    if (!d.unite(e.u, e.v)) return false;
  }
  return d.components() == 1;
}

bool is_arborescence(const std::vector<Endpoints>& arcs, std::uint32_t n, Vertex root) {
  if (root >= n || arcs.size() != n - 1 || !in_range(arcs, n)) return false;
  std::vector<std::uint32_t> parent(n, n);
  for (const auto& a : arcs) {
    if (a.u == root || parent[a.u] != n) return false;
    parent[a.u] = a.v;
  }
  // Each vertex must reach the root; mark as we go.
  std::vector<char> state(n, 0);  // 0 unknown, 1 on walk, 2 reaches root
  state[root] = 2;
  for (Vertex s = 0; s < n; ++s) {
    std::vector<Vertex> walk;
    Vertex v = s;
    while (state[v] == 0) {
      state[v] = 1;
      walk.push_back(v);
      v = parent[v];
    }
    if (state[v] == 1) return false;
    for (Vertex w : walk) state[w] = 2;
  }
  return true;
}

bool is_bipartite_perfect_matching(const std::vector<Endpoints>& edges, std::uint32_t n) {
  if (edges.size() != n) return false;
  std::vector<char> u_used(n, 0), v_used(n, 0);
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n || u_used[e.u] || v_used[e.v]) return false;
    u_used[e.u] = v_used[e.v] = 1;
  }
  return true;
}

bool is_perfect_matching(const std::vector<Endpoints>& edges, std::uint32_t n) {
  if (n % 2 != 0 || edges.size() != n / 2 || !in_range(edges, n)) return false;
  std::vector<char> used(n, 0);
  for (const auto& e : edges) {
    if (used[e.u] || used[e.v]) return false;
    used[e.u] = used[e.v] = 1;
  }
  return true;
}

bool is_hamilton_cycle(const std::vector<Endpoints>& edges, std::uint32_t n, bool directed) {
  if (edges.size() != n || !in_range(edges, n)) return false;
  if (!directed && (n < 3 || !distinct_undirected(edges))) return false;
  if (directed && n < 2) return false;
  std::vector<std::vector<Vertex>> adj(n);
  std::vector<int> indeg(n, 0);
  for (const auto& e : edges) {
    adj[e.u].push_back(e.v);
    ++indeg[e.v];
    if (!directed) adj[e.v].push_back(e.u);
  }
  for (Vertex v = 0; v < n; ++v) {
    if (directed ? (adj[v].size() != 1 || indeg[v] != 1) : adj[v].size() != 2) return false;
  }
  // Walk the cycle from 0 and count its length.
  Vertex prev = n, cur = 0;
  for (std::uint32_t steps = 0;; ++steps) {
    Vertex nxt = adj[cur][0];
    if (!directed && nxt == prev) nxt = adj[cur][1];
    prev = cur;
    cur = nxt;
    if (cur == 0) return steps + 1 == n;
    if (steps > n) return false;
  }
}

bool is_clique(const std::vector<Endpoints>& edges, std::uint32_t r) {
  if (r < 2 || edges.size() != static_cast<std::size_t>(r) * (r - 1) / 2) return false;
  if (!distinct_undirected(edges)) return false;
  std::set<Vertex> verts;
  for (const auto& e : edges) {
    if (e.u == e.v) return false;
    verts.insert(e.u);
    verts.insert(e.v);
  }
  return verts.size() == r;
}

bool is_triangle(const std::vector<Endpoints>& edges) { return is_clique(edges, 3); }

bool is_path(const std::vector<Endpoints>& edges, Vertex s, Vertex t) {
  if (s == t || edges.empty() || !distinct_undirected(edges)) return false;
  std::map<Vertex, std::vector<Vertex>> adj;
  for (const auto& e : edges) {
    if (e.u == e.v) return false;
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (const auto& [v, nb] : adj) {
    const std::size_t want = (v == s || v == t) ? 1 : 2;
    if (nb.size() != want) return false;
  }
  if (!adj.count(s) || !adj.count(t)) return false;
  // Degree pattern plus reaching t from s through every edge rules out
  // extra cycles.
  Vertex prev = s, cur = adj[s][0];
  std::size_t used = 1;
  while (cur != t) {
    const auto& nb = adj[cur];
    const Vertex nxt = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = nxt;
    if (++used > edges.size()) return false;
  }
  return used == edges.size();
}

bool is_wedge_family(const std::vector<Endpoints>& edges, std::uint32_t count) {
  if (edges.size() != 2 * static_cast<std::size_t>(count)) return false;
  std::set<std::pair<Vertex, Vertex>> ends;
  for (std::size_t i = 0; i < edges.size(); i += 2) {
    const auto a = key(edges[i]);
    const auto b = key(edges[i + 1]);
    Vertex mid, x, y;
    if (a.first == b.first) {
      mid = a.first, x = a.second, y = b.second;
    } else if (a.first == b.second) {
      mid = a.first, x = a.second, y = b.first;
    } else if (a.second == b.first) {
      mid = a.second, x = a.first, y = b.second;
    } else if (a.second == b.second) {
      mid = a.second, x = a.first, y = b.first;
    } else {
      return false;
    }
    (void)mid;
    if (x == y || !ends.insert({std::min(x, y), std::max(x, y)}).second) return false;
  }
  return true;
}

bool validate(const std::string& structure, const std::vector<Endpoints>& edges, std::uint32_t n,
              std::uint32_t param) {
  if (structure == "spanning-tree") return is_spanning_tree(edges, n);
  if (structure == "arborescence") return is_arborescence(edges, n, param);
  if (structure == "bipartite-pm") return is_bipartite_perfect_matching(edges, n);
  if (structure == "pm-complete") return is_perfect_matching(edges, n);
  if (structure == "hamilton") return is_hamilton_cycle(edges, n, false);
  if (structure == "hamilton-directed") return is_hamilton_cycle(edges, n, true);
  if (structure == "triangle") return is_triangle(edges);
  if (structure == "clique") return is_clique(edges, param);
  if (structure == "shortest-path") return is_path(edges, 0, n - 1);
  if (structure == "paths-len2") return is_wedge_family(edges, param);
  throw std::invalid_argument("no validator for '" + structure + "'");
}

}  // namespace onbuy

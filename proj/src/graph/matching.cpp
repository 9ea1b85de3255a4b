#include "onbuy/matching.hpp"

#include <deque>

namespace onbuy {

namespace {

// One BFS over alternating paths from every free U vertex; augments along
// the first free V vertex reached. Returns false if none is reachable.
bool augment_once(const BipartiteAdjacency& adj, Matching& m) {
  const auto nu = static_cast<std::uint32_t>(adj.size());
  const auto nv = static_cast<std::uint32_t>(m.mate_v.size());
  std::vector<std::uint32_t> parent_v(nv, kUnmatched);  // V vertex -> U vertex that reached it
  std::vector<char> seen_u(nu, 0);
  std::deque<std::uint32_t> queue;
  for (std::uint32_t u = 0; u < nu; ++u) {
    if (m.mate_u[u] == kUnmatched) {
      queue.push_back(u);
      seen_u[u] = 1;
    }
  }
  while (!queue.empty()) {
    const std::uint32_t u = queue.front();
    queue.pop_front();
    for (Vertex v : adj[u]) {
      if (parent_v[v] != kUnmatched) continue;
      parent_v[v] = u;
      const std::uint32_t w = m.mate_v[v];
      if (w == kUnmatched) {
        // Flip the path back to its free root.
        std::uint32_t cv = v;
        for (;;) {
          const std::uint32_t cu = parent_v[cv];
          const std::uint32_t prev = m.mate_u[cu];
          m.mate_u[cu] = cv;
          m.mate_v[cv] = cu;
          if (prev == kUnmatched) break;
          cv = prev;
        }
        ++m.size;
        return true;
      }
      if (!seen_u[w]) {
        seen_u[w] = 1;
        queue.push_back(w);
      }
    }
  }
  return false;
}

bool dfs_augment(const BipartiteAdjacency& adj, const Matching& m, std::uint32_t u,
                 std::vector<char>& seen_v) {
  for (Vertex v : adj[u]) {
    if (seen_v[v]) continue;
    seen_v[v] = 1;
    if (m.mate_v[v] == kUnmatched || dfs_augment(adj, m, m.mate_v[v], seen_v)) return true;
  }
  return false;
}

}  // namespace

Matching max_bipartite_matching(const BipartiteAdjacency& adj, std::uint32_t n_v) {
  Matching m;
  m.mate_u.assign(adj.size(), kUnmatched);
  m.mate_v.assign(n_v, kUnmatched);
  while (augment_once(adj, m)) {
  }
  return m;
}

bool has_augmenting_path(const BipartiteAdjacency& adj, const Matching& m) {
  std::vector<char> seen_v(m.mate_v.size(), 0);
  for (std::uint32_t u = 0; u < adj.size(); ++u) {
    if (m.mate_u[u] == kUnmatched && dfs_augment(adj, m, u, seen_v)) return true;
  }
  return false;
}

IncrementalMatcher::IncrementalMatcher(std::uint32_t n) : n_(n), adj_(n), deg_v_(n, 0) {
  m_.mate_u.assign(n, kUnmatched);
  m_.mate_v.assign(n, kUnmatched);
}

void IncrementalMatcher::add_edge(Vertex u, Vertex v) {
  if (adj_[u].empty()) ++covered_u_;
  if (deg_v_[v]++ == 0) ++covered_v_;
  adj_[u].push_back(v);
  if (m_.mate_u[u] == kUnmatched && m_.mate_v[v] == kUnmatched) {
    m_.mate_u[u] = v;
    m_.mate_v[v] = u;
    ++m_.size;
  }
  if (!primed_) {
    if (covered_u_ < n_ || covered_v_ < n_) return;
    primed_ = true;
  }
  // A maximum matching grows by at most one per added edge.
  if (!m_.perfect()) augment_from_all();
}

bool IncrementalMatcher::augment_from_all() {
  bool any = false;
  while (augment_once(adj_, m_)) any = true;
  return any;
}

const Matching& IncrementalMatcher::matching() {
  if (!primed_) augment_from_all();
  return m_;
}

}  // namespace onbuy

#include "onbuy/hamilton.hpp"

#include <algorithm>

#include "onbuy/rng.hpp"

namespace onbuy {

namespace {

Adjacency dedupe(const Adjacency& adj, std::uint32_t n) {
  Adjacency out(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    out[v] = adj[v];
    std::sort(out[v].begin(), out[v].end());
    out[v].erase(std::unique(out[v].begin(), out[v].end()), out[v].end());
    out[v].erase(std::remove(out[v].begin(), out[v].end(), v), out[v].end());
  }
  return out;
}

std::vector<char> reach(const Adjacency& adj, Vertex from, const std::vector<char>* allowed) {
  std::vector<char> seen(adj.size(), 0);
  std::vector<Vertex> stack{from};
  seen[from] = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : adj[v]) {
      if (seen[w] || (allowed && !(*allowed)[w])) continue;
      seen[w] = 1;
      stack.push_back(w);
    }
  }
  return seen;
}

bool adjacent(const Adjacency& sorted, Vertex a, Vertex b) {
  return std::binary_search(sorted[a].begin(), sorted[a].end(), b);
}

// Rotation-extension: extend the path from its end where possible,
// otherwise rotate it about a neighbour of the end. The start stays at 0.
bool rotate_extend(const Adjacency& adj, Rng& rng, std::uint64_t& nodes, std::uint64_t budget,
                   std::vector<Vertex>& out) {
  const auto n = static_cast<std::uint32_t>(adj.size());
  std::vector<std::uint32_t> pos(n, n);
  std::vector<int> free_deg(n);
  for (Vertex v = 0; v < n; ++v) free_deg[v] = static_cast<int>(adj[v].size());
  std::vector<Vertex> path;
  auto push = [&](Vertex v) {
    pos[v] = static_cast<std::uint32_t>(path.size());
    path.push_back(v);
    for (Vertex x : adj[v]) --free_deg[x];
  };
  push(0);
  std::vector<Vertex> options;
  while (nodes < budget) {
    ++nodes;
    const Vertex end = path.back();
    Vertex best = n;
    for (Vertex w : adj[end]) {
      if (pos[w] == n && (best == n || free_deg[w] < free_deg[best])) best = w;
    }
    if (best != n) {
      push(best);
      continue;
    }
    if (path.size() == n && adjacent(adj, end, 0)) {
      out = std::move(path);
      return true;
    }
    options.clear();
    for (Vertex w : adj[end]) {
      if (pos[w] + 2 < path.size()) options.push_back(w);
    }
    if (options.empty()) return false;
    const Vertex w = options[rng.below(options.size())];
    std::reverse(path.begin() + pos[w] + 1, path.end());
    for (std::uint32_t i = pos[w] + 1; i < path.size(); ++i) pos[path[i]] = i;
  }
  return false;
}

// A cycle cover from a bipartite matching of tails to heads, then
// 2-exchanges a -> b', b -> a' that merge the cycles through a -> a' and
// b -> b'.
bool cover_and_patch(const Adjacency& out, Rng& rng, std::uint64_t& nodes, std::uint64_t budget,
                     std::vector<Vertex>& cycle) {
  constexpr Vertex none = 0xffffffffu;
  const auto n = static_cast<std::uint32_t>(out.size());
  std::vector<Vertex> succ(n, none), pred(n, none), order(n);
  std::vector<std::uint64_t> mark(n, 0);
  std::uint64_t stamp = 0;
  for (Vertex v = 0; v < n; ++v) order[v] = v;
  for (Vertex i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  // Iterative augmenting-path search would be tidier; recursion depth is
  // bounded by n, fine for the sizes used here.
  auto augment = [&](auto&& self, Vertex x) -> bool {
    ++nodes;
    for (Vertex y : out[x]) {
      if (mark[y] == stamp) continue;
      mark[y] = stamp;
      if (pred[y] == none || self(self, pred[y])) {
        succ[x] = y;
        pred[y] = x;
        return true;
      }
    }
    return false;
  };
  for (Vertex x : order) {
    ++stamp;
    if (!augment(augment, x) || nodes >= budget) return false;
  }
  std::vector<std::uint32_t> id(n);
  auto label = [&] {
    std::uint32_t count = 0;
    std::vector<char> seen(n, 0);
    for (Vertex v : order) {
      if (seen[v]) continue;
      for (Vertex x = v; !seen[x]; x = succ[x]) seen[x] = 1, id[x] = count;
      ++count;
    }
    return count;
  };
  std::uint32_t cycles = label();
  while (cycles > 1) {
    bool merged = false;
    for (Vertex a : order) {
      if (++nodes > budget) return false;
      const Vertex a2 = succ[a];
      for (Vertex b2 : out[a]) {
        const Vertex b = pred[b2];
        if (id[b] == id[a] || !adjacent(out, b, a2)) continue;
        succ[a] = b2, pred[b2] = a;
        succ[b] = a2, pred[a2] = b;
        merged = true;
        break;
      }
      if (merged) break;
    }
    if (!merged) return false;
    cycles = label();
  }
  cycle.clear();
  Vertex x = 0;
  do {
    cycle.push_back(x);
    x = succ[x];
  } while (x != 0);
  return true;
}

// Path-extension search for graphs. avail_[x] counts neighbours of an
// unvisited x that can still serve as its predecessor or successor; a
// vertex with fewer than two is a dead end.
class Search {
 public:
  Search(const Adjacency& adj, std::uint64_t budget)
      : out_(adj), budget_(budget), n_(static_cast<std::uint32_t>(adj.size())) {
    visited_.assign(n_, 0);
    avail_out_.resize(n_);
    for (Vertex v = 0; v < n_; ++v) avail_out_[v] = static_cast<int>(out_[v].size());
    visited_[0] = 1;
    path_.push_back(0);
  }

  HamiltonResult run() {
    HamiltonResult r;
    const bool ok = extend();
    r.nodes = nodes_;
    if (ok) {
      r.status = HamiltonStatus::found;
      r.cycle = path_;
    } else {
      r.status = exhausted_ ? HamiltonStatus::cutoff : HamiltonStatus::proven_absent;
    }
    return r;
  }

 private:
  bool unvisited_ok(Vertex x) const { return avail_out_[x] >= 2; }

  bool connected_rest() {
    // Every unvisited vertex must be reachable from the end through
    // unvisited vertices.
    const Vertex end = path_.back();
    std::vector<char> allowed(n_, 0);
    for (Vertex v = 0; v < n_; ++v) allowed[v] = !visited_[v];
    allowed[end] = 1;
    const auto seen = reach(out_, end, &allowed);
    for (Vertex v = 0; v < n_; ++v) {
      if (!visited_[v] && !seen[v]) return false;
    }
    return true;
  }

  bool extend() {
    const Vertex end = path_.back();
    if (path_.size() == n_) {
      for (Vertex w : out_[end]) {
        if (w == 0) return true;
      }
      return false;
    }
    if (path_.size() % 4 == 0 && !connected_rest()) return false;

    std::vector<Vertex> cand;
    for (Vertex w : out_[end]) {
      if (!visited_[w]) cand.push_back(w);
    }
    std::sort(cand.begin(), cand.end(), [&](Vertex a, Vertex b) {
      return avail_out_[a] != avail_out_[b] ? avail_out_[a] < avail_out_[b] : a < b;
    });

    for (Vertex w : cand) {
      if (++nodes_ > budget_) {
        exhausted_ = true;
        return false;
      }
      bool ok = move(end, w, -1);
      if (ok && extend()) return true;
      move(end, w, +1);
      path_.pop_back();
      visited_[w] = 0;
      if (exhausted_) return false;
    }
    return false;
  }

  // Applies (delta = -1) or undoes (delta = +1) the bookkeeping for the
  // step end -> w. Returns whether every affected vertex stays viable.
  bool move(Vertex end, Vertex w, int delta) {
    if (delta < 0) {
      visited_[w] = 1;
      path_.push_back(w);
    }
    bool ok = true;
    // The start stays usable as a closing neighbour; any other old end does not.
    if (end != 0) {
      for (Vertex x : out_[end]) {
        if (visited_[x]) continue;
        avail_out_[x] += delta;
        ok = ok && unvisited_ok(x);
      }
    }
    return ok;
  }

  const Adjacency& out_;
  std::uint64_t budget_;
  std::uint32_t n_;
  std::vector<char> visited_;
  std::vector<int> avail_out_;
  std::vector<Vertex> path_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

// Path-extension search for digraphs, pruned by requiring a cycle cover of
// the digraph that remains once the current path is contracted: every
// vertex still needing a successor must get a distinct one.
class DirectedSearch {
 public:
  DirectedSearch(const Adjacency& out, const Adjacency& in, std::uint64_t budget)
      : out_(out), in_(in), budget_(budget), n_(static_cast<std::uint32_t>(out.size())) {
    visited_.assign(n_, 0);
    succ_.assign(n_, kNone);
    pred_.assign(n_, kNone);
    mark_.assign(n_, 0);
    visited_[0] = 1;
    path_.push_back(0);
  }

  HamiltonResult run() {
    HamiltonResult r;
    bool ok = cover();
    ok = ok && extend();
    r.nodes = nodes_;
    if (ok) {
      r.status = HamiltonStatus::found;
      r.cycle = path_;
    } else {
      r.status = exhausted_ ? HamiltonStatus::cutoff : HamiltonStatus::proven_absent;
    }
    return r;
  }

 private:
  static constexpr Vertex kNone = 0xffffffffu;

  bool in_left(Vertex x) const { return !visited_[x] || x == path_.back(); }
  bool in_right(Vertex y) const { return !visited_[y] || y == 0; }
  bool allowed(Vertex x, Vertex y) const {
    if (!in_left(x) || !in_right(y)) return false;
    return !(x == path_.back() && y == 0 && path_.size() < n_);
  }

  bool augment(Vertex x) {
    for (Vertex y : out_[x]) {
      if (mark_[y] == stamp_ || !allowed(x, y)) continue;
      mark_[y] = stamp_;
      if (pred_[y] == kNone || augment(pred_[y])) {
        succ_[x] = y;
        pred_[y] = x;
        return true;
      }
    }
    return false;
  }

  // Repairs the matching after a move; false if no cover exists.
  bool cover() {
    for (Vertex x = 0; x < n_; ++x) {
      if (!in_left(x)) continue;
      if (succ_[x] != kNone && !allowed(x, succ_[x])) {
        pred_[succ_[x]] = kNone;
        succ_[x] = kNone;
      }
    }
    for (Vertex x = 0; x < n_; ++x) {
      if (!in_left(x) || succ_[x] != kNone) continue;
      ++stamp_;
      if (!augment(x)) return false;
    }
    return true;
  }

  bool strongly_connected_rest() {
    // From the end through unvisited vertices every unvisited vertex must be
    // reachable, and each must reach the start.
    const Vertex end = path_.back();
    std::vector<char> allowed(n_, 0);
    for (Vertex v = 0; v < n_; ++v) allowed[v] = !visited_[v];
    allowed[end] = 1;
    auto fwd = reach(out_, end, &allowed);
    allowed[end] = visited_[end] ? 0 : 1;
    allowed[0] = 1;
    auto back = reach(in_, 0, &allowed);
    for (Vertex v = 0; v < n_; ++v) {
      if (!visited_[v] && (!fwd[v] || !back[v])) return false;
    }
    return true;
  }

  bool extend() {
    const Vertex end = path_.back();
    if (path_.size() == n_) {
      return std::find(out_[end].begin(), out_[end].end(), Vertex{0}) != out_[end].end();
    }
    if (path_.size() % 4 == 0 && !strongly_connected_rest()) return false;

    std::vector<Vertex> cand;
    const Vertex hint = succ_[end];
    if (hint != kNone && !visited_[hint]) cand.push_back(hint);
    for (Vertex w : out_[end]) {
      if (!visited_[w] && w != hint) cand.push_back(w);
    }
    const std::vector<Vertex> saved_succ = succ_, saved_pred = pred_;
    for (Vertex w : cand) {
      if (++nodes_ > budget_) {
        exhausted_ = true;
        return false;
      }
      // Fix end -> w.
      if (succ_[end] != kNone) pred_[succ_[end]] = kNone;
      if (pred_[w] != kNone) succ_[pred_[w]] = kNone;
      succ_[end] = w;
      pred_[w] = end;
      visited_[w] = 1;
      path_.push_back(w);
      if (cover() && extend()) return true;
      path_.pop_back();
      visited_[w] = 0;
      succ_ = saved_succ;
      pred_ = saved_pred;
      if (exhausted_) return false;
    }
    return false;
  }

  const Adjacency& out_;
  const Adjacency& in_;
  std::uint64_t budget_;
  std::uint32_t n_;
  std::vector<char> visited_;
  std::vector<Vertex> succ_, pred_;
  std::vector<std::uint64_t> mark_;
  std::uint64_t stamp_ = 0;
  std::vector<Vertex> path_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

HamiltonResult find_hamilton_cycle(const Adjacency& out_raw, const Adjacency& in_raw, bool directed,
                                   std::uint64_t budget) {
  const auto n = static_cast<std::uint32_t>(out_raw.size());
  HamiltonResult none;
  none.status = HamiltonStatus::proven_absent;
  if (n == 0 || (!directed && n < 3) || (directed && n < 2)) return none;

  const Adjacency out = dedupe(out_raw, n);
  const Adjacency in = directed ? dedupe(in_raw, n) : out;
  for (Vertex v = 0; v < n; ++v) {
    if (directed ? (out[v].empty() || in[v].empty()) : out[v].size() < 2) return none;
  }
  const auto fwd = reach(out, 0, nullptr);
  const auto back = reach(in, 0, nullptr);
  for (Vertex v = 0; v < n; ++v) {
    if (!fwd[v] || !back[v]) return none;
  }
  // Randomized heuristics first, seeded from n so results are reproducible;
  // the exhaustive search gets whatever budget they leave.
  Rng rng(RngHandle{n, 0x68616d});
  std::uint64_t nodes = 0;
  const std::uint64_t share = budget / 2;
  for (int attempt = 0; attempt < 8 && nodes < share; ++attempt) {
    HamiltonResult r;
    const bool ok = directed ? cover_and_patch(out, rng, nodes, share, r.cycle)
                             : rotate_extend(out, rng, nodes, share, r.cycle);
    if (ok) {
      r.status = HamiltonStatus::found;
      r.nodes = nodes;
      return r;
    }
  }
  HamiltonResult r = directed ? DirectedSearch(out, in, budget - nodes).run() : Search(out, budget - nodes).run();
  r.nodes += nodes;
  return r;
}

HamiltonResult find_hamilton_cycle(const Adjacency& adj, std::uint64_t budget) {
  return find_hamilton_cycle(adj, adj, false, budget);
}

}  // namespace onbuy

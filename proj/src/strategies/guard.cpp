#include "onbuy/guard.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "onbuy/hamilton.hpp"

namespace onbuy {

constexpr Vertex kNone = 0xffffffffu;

Guard::Guard(const Session& session)
    : session_(session), u_(session.universe()), member_((session.size() + 63) / 64, 0) {}

bool Guard::initialize() { return repair(nullptr); }

bool Guard::must_take(ItemId item) {
  if (!in_witness(item)) return false;
  ++repairs_;
  return !repair(&item);
}

void Guard::purchased(ItemId item) {
  if (in_witness(item)) {
    ++bought_;
  } else {
    absorb(item);
  }
}

std::vector<ItemId> Guard::witness() const { return list_; }

void Guard::add_item(ItemId item) {
  member_[item >> 6] |= std::uint64_t{1} << (item & 63);
  ++size_;
  if (bought(item)) ++bought_;
}

void Guard::remove_item(ItemId item) {
  member_[item >> 6] &= ~(std::uint64_t{1} << (item & 63));
  --size_;
  if (bought(item)) --bought_;
}

void Guard::set_witness(std::vector<ItemId> items) {
  for (ItemId i : list_) remove_item(i);
  list_ = std::move(items);
  for (ItemId i : list_) add_item(i);
}

namespace {

// s-t path by breadth-first search, checking the edge to t first.
class PathGuard final : public Guard {
 public:
  PathGuard(const Session& s, Vertex from, Vertex to) : Guard(s), s_(from), t_(to) {}

 protected:
  bool repair(const ItemId*) override {
    const Vertex n = u_.vertices();
    std::vector<Vertex> parent(n, kNone);
    std::vector<Vertex> queue{s_};
    parent[s_] = s_;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex x = queue[head];
      if (available(u_.id(x, t_))) {
        parent[t_] = x;
        break;
      }
      for (Vertex y = 0; y < n; ++y) {
        if (parent[y] != kNone || y == t_ || !available(u_.id(x, y))) continue;
        parent[y] = x;
        queue.push_back(y);
      }
    }
    if (parent[t_] == kNone) return false;
    std::vector<ItemId> items;
    for (Vertex v = t_; v != s_; v = parent[v]) items.push_back(u_.id(parent[v], v));
    std::reverse(items.begin(), items.end());
    set_witness(std::move(items));
    return true;
  }

 private:
  Vertex s_, t_;
};

// K_r by candidate-set recursion.
class CliqueGuard final : public Guard {
 public:
  CliqueGuard(const Session& s, std::uint32_t r) : Guard(s), r_(r) {
    if (r < 3) throw std::invalid_argument("clique guard needs r >= 3");
  }

 protected:
  bool repair(const ItemId*) override {
    const Vertex n = u_.vertices();
    std::vector<Vertex> all(n);
    for (Vertex v = 0; v < n; ++v) all[v] = (start_ + v) % n;
    chosen_.clear();
    if (!extend(all)) return false;
    // The next search starts past this clique, away from whatever vertex
    // the order is currently working through.
    start_ = (chosen_.back() + 1) % n;
    std::vector<ItemId> items;
    for (std::size_t i = 0; i < chosen_.size(); ++i) {
      for (std::size_t j = i + 1; j < chosen_.size(); ++j) items.push_back(u_.id(chosen_[i], chosen_[j]));
    }
    set_witness(std::move(items));
    return true;
  }

 private:
  bool extend(const std::vector<Vertex>& cand) {
    if (chosen_.size() == r_) return true;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (chosen_.size() + (cand.size() - i) < r_) return false;
      const Vertex v = cand[i];
      std::vector<Vertex> next;
      for (std::size_t j = i + 1; j < cand.size(); ++j) {
        if (available(u_.id(v, cand[j]))) next.push_back(cand[j]);
      }
      chosen_.push_back(v);
      if (chosen_.size() + next.size() >= r_ && extend(next)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  std::uint32_t r_;
  Vertex start_ = 0;
  std::vector<Vertex> chosen_;
};

// Spanning tree. A rejected tree edge is replaced by any obtainable edge
// across the cut it leaves; the smaller side is found by two interleaved
// searches.
class SpanningTreeGuard final : public Guard {
 public:
  explicit SpanningTreeGuard(const Session& s) : Guard(s), adj_(s.universe().vertices()) {}

  std::vector<ItemId> witness() const override {
    std::vector<ItemId> items;
    for (Vertex v = 0; v < adj_.size(); ++v) {
      for (const auto& [w, id] : adj_[v]) {
        if (v < w) items.push_back(id);
      }
    }
    return items;
  }

 protected:
  bool repair(const ItemId* removed) override {
    if (!removed) return build();
    const Endpoints e = u_.endpoints(*removed);
    unlink(e.u, e.v);
    const std::vector<Vertex> side = smaller_side(e.u, e.v);
    stamp_.assign(adj_.size(), 0);
    for (Vertex x : side) stamp_[x] = 1;
    const Vertex n = u_.vertices();
    for (Vertex x : side) {
      for (Vertex y = 0; y < n; ++y) {
        if (stamp_[y] || !available(u_.id(x, y))) continue;
        remove_item(*removed);
        link(x, y);
        return true;
      }
    }
    link_raw(e.u, e.v, *removed);
    return false;
  }

 private:
  bool build() {
    const Vertex n = u_.vertices();
    std::vector<Vertex> parent(n, kNone);
    std::vector<Vertex> queue{0};
    parent[0] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex x = queue[head];
      for (Vertex y = 0; y < n; ++y) {
        if (parent[y] != kNone || !available(u_.id(x, y))) continue;
        parent[y] = x;
        queue.push_back(y);
      }
    }
    if (queue.size() != n) return false;
    for (Vertex v = 1; v < n; ++v) link(parent[v], v);
    return true;
  }

  void link(Vertex a, Vertex b) {
    const ItemId id = u_.id(a, b);
    link_raw(a, b, id);
    add_item(id);
  }
  void link_raw(Vertex a, Vertex b, ItemId id) {
    adj_[a].push_back({b, id});
    adj_[b].push_back({a, id});
  }
  void unlink(Vertex a, Vertex b) {
    auto drop = [](auto& list, Vertex w) {
      auto it = std::find_if(list.begin(), list.end(), [w](const auto& p) { return p.first == w; });
      *it = list.back();
      list.pop_back();
    };
    drop(adj_[a], b);
    drop(adj_[b], a);
  }

  std::vector<Vertex> smaller_side(Vertex a, Vertex b) {
    seen_.assign(adj_.size(), 0);
    std::vector<Vertex> qa{a}, qb{b};
    seen_[a] = 1;
    seen_[b] = 2;
    std::size_t ha = 0, hb = 0;
    auto step = [&](std::vector<Vertex>& q, std::size_t& h, char tag) {
      const Vertex x = q[h++];
      for (const auto& [w, id] : adj_[x]) {
        if (!seen_[w]) {
          seen_[w] = tag;
          q.push_back(w);
        }
      }
    };
    for (;;) {
      if (ha == qa.size()) return qa;
      if (hb == qb.size()) return qb;
      step(qa, ha, 1);
      step(qb, hb, 2);
    }
  }

  std::vector<std::vector<std::pair<Vertex, ItemId>>> adj_;
  std::vector<char> seen_, stamp_;

 protected:
  // Swap the new edge in for an unbought edge on the tree path it closes.
  void absorb(ItemId item) override {
    const Endpoints e = u_.endpoints(item);
    std::vector<Vertex> from(adj_.size(), kNone);
    std::vector<Vertex> queue{e.u};
    from[e.u] = e.u;
    for (std::size_t h = 0; h < queue.size() && from[e.v] == kNone; ++h) {
      for (const auto& [w, id] : adj_[queue[h]]) {
        if (from[w] == kNone) {
          from[w] = queue[h];
          queue.push_back(w);
        }
      }
    }
    if (from[e.v] == kNone) return;
    for (Vertex v = e.v; v != e.u; v = from[v]) {
      const ItemId id = u_.id(v, from[v]);
      if (bought(id)) continue;
      unlink(v, from[v]);
      remove_item(id);
      link(e.u, e.v);
      return;
    }
  }
};

// In-arborescence. Local repair reattaches the cut-off vertex outside its
// own subtree; failing that, a vertex reachable from all others is found
// with the mother-vertex scan on the reversed digraph.
class ArborescenceGuard final : public Guard {
 public:
  explicit ArborescenceGuard(const Session& s)
      : Guard(s), parent_(s.universe().vertices(), kNone), state_(s.universe().vertices(), 0) {}

  std::vector<ItemId> witness() const override {
    std::vector<ItemId> items;
    for (Vertex v = 0; v < parent_.size(); ++v) {
      if (parent_[v] != kNone) items.push_back(u_.id(v, parent_[v]));
    }
    return items;
  }

 protected:
  bool repair(const ItemId* removed) override {
    if (removed) {
      const Endpoints e = u_.endpoints(*removed);
      if (reattach(e.u)) return true;
    }
    return rebuild();
  }

 private:
  bool reattach(Vertex x) {
    const Vertex n = u_.vertices();
    const Vertex old = parent_[x];
    ++epoch_;
    // marks: epoch*2 = reaches root avoiding x, epoch*2+1 = passes x
    const std::uint64_t good = 2 * epoch_, bad = 2 * epoch_ + 1;
    state_[root_] = good;
    state_[x] = bad;
    std::vector<Vertex> walk;
    for (Vertex k = 1; k < n; ++k) {
      const Vertex w = (x + k) % n;
      if (!available(u_.id(x, w))) continue;
      walk.clear();
      Vertex v = w;
      while (state_[v] != good && state_[v] != bad) {
        walk.push_back(v);
        v = parent_[v];
      }
      const std::uint64_t verdict = state_[v];
      for (Vertex y : walk) state_[y] = verdict;
      if (verdict == good) {
        remove_item(u_.id(x, old));
        parent_[x] = w;
        add_item(u_.id(x, w));
        return true;
      }
    }
    return false;
  }

  bool rebuild() {
    const Vertex n = u_.vertices();
    // Mother vertex of the reversed digraph: last DFS root over all vertices.
    std::vector<char> seen(n, 0);
    Vertex last = 0;
    for (Vertex s = 0; s < n; ++s) {
      if (seen[s]) continue;
      last = s;
      reverse_reach(s, seen, nullptr);
    }
    std::vector<char> check(n, 0);
    std::vector<Vertex> parent(n, kNone);
    reverse_reach(last, check, &parent);
    if (std::find(check.begin(), check.end(), 0) != check.end()) return false;
    for (Vertex v = 0; v < n; ++v) {
      if (parent_[v] != kNone) remove_item(u_.id(v, parent_[v]));
    }
    parent_ = parent;
    root_ = last;
    for (Vertex v = 0; v < n; ++v) {
      if (parent_[v] != kNone) add_item(u_.id(v, parent_[v]));
    }
    return true;
  }

  // Vertices that reach `s` through obtainable arcs.
  void reverse_reach(Vertex s, std::vector<char>& seen, std::vector<Vertex>* parent) {
    const Vertex n = u_.vertices();
    std::vector<Vertex> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y = 0; y < n; ++y) {
        if (seen[y] || y == x || !available(u_.id(y, x))) continue;
        seen[y] = 1;
        if (parent) (*parent)[y] = x;
        stack.push_back(y);
      }
    }
  }

  void absorb(ItemId item) override {
    const Endpoints e = u_.endpoints(item);
    const Vertex x = e.u, w = e.v;
    if (x == root_ || parent_[x] == kNone || bought(u_.id(x, parent_[x]))) return;
    for (Vertex v = w; v != kNone; v = parent_[v]) {
      if (v == x) return;
    }
    remove_item(u_.id(x, parent_[x]));
    parent_[x] = w;
    add_item(item);
  }

  std::vector<Vertex> parent_;
  Vertex root_ = 0;
  std::vector<std::uint64_t> state_;
  std::uint64_t epoch_ = 0;
};

// Perfect matching between U and V of size m. `item` maps a pair to its id.
class MatchingGuard final : public Guard {
 public:
  MatchingGuard(const Session& s, std::uint32_t m, std::function<ItemId(Vertex, Vertex)> item,
                std::uint32_t offset)
      : Guard(s), m_(m), offset_(offset), item_(std::move(item)), mate_u_(m, kNone), mate_v_(m, kNone) {}

  std::vector<ItemId> witness() const override {
    std::vector<ItemId> items;
    for (Vertex x = 0; x < m_; ++x) {
      if (mate_u_[x] != kNone) items.push_back(item_(x, mate_u_[x]));
    }
    return items;
  }

 protected:
  bool repair(const ItemId* removed) override {
    if (!removed) {
      for (Vertex x = 0; x < m_; ++x) {
        if (!augment(x)) return false;
      }
      return true;
    }
    Vertex x = kNone;
    for (Vertex a = 0; a < m_ && x == kNone; ++a) {
      if (mate_u_[a] != kNone && item_(a, mate_u_[a]) == *removed) x = a;
    }
    const Vertex y = mate_u_[x];
    remove_item(*removed);
    mate_u_[x] = kNone;
    mate_v_[y] = kNone;
    if (augment(x)) return true;
    mate_u_[x] = y;
    mate_v_[y] = x;
    add_item(*removed);
    return false;
  }

 private:
  // Breadth-first alternating search from a free U vertex.
  bool augment(Vertex root) {
    std::vector<Vertex> from_v(m_, kNone);
    std::vector<Vertex> queue{root};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex x = queue[head];
      for (Vertex y = 0; y < m_; ++y) {
        if (from_v[y] != kNone || !available(item_(x, y))) continue;
        from_v[y] = x;
        if (mate_v_[y] == kNone) {
          flip(y, from_v);
          return true;
        }
        queue.push_back(mate_v_[y]);
      }
    }
    return false;
  }

  void flip(Vertex y, const std::vector<Vertex>& from_v) {
    while (y != kNone) {
      const Vertex x = from_v[y];
      const Vertex prev = mate_u_[x];
      if (prev != kNone) remove_item(item_(x, prev));
      mate_u_[x] = y;
      mate_v_[y] = x;
      add_item(item_(x, y));
      y = prev;
    }
  }

  // Match the new edge, then re-augment between the two partners it freed.
  void absorb(ItemId item) override {
    Endpoints e = u_.endpoints(item);
    if (e.u >= m_ || e.v < offset_) return;
    const Vertex x = e.u, y = e.v - offset_;
    const Vertex y2 = mate_u_[x], x2 = mate_v_[y];
    if (y2 == kNone || x2 == kNone) return;
    if (bought(item_(x, y2)) || bought(item_(x2, y))) return;
    remove_item(item_(x, y2));
    remove_item(item_(x2, y));
    mate_v_[y2] = kNone;
    mate_u_[x2] = kNone;
    mate_u_[x] = y;
    mate_v_[y] = x;
    add_item(item);
    if (augment(x2)) return;
    remove_item(item);
    mate_u_[x] = y2;
    mate_v_[y2] = x;
    mate_u_[x2] = y;
    mate_v_[y] = x2;
    add_item(item_(x, y2));
    add_item(item_(x2, y));
  }

  std::uint32_t m_;
  std::uint32_t offset_;
  std::function<ItemId(Vertex, Vertex)> item_;
  std::vector<Vertex> mate_u_, mate_v_;
};

// Hamilton cycle. Local moves first (2-opt for graphs, segment moves for
// digraphs), then a budgeted search; a cutoff counts as "none", so this
// guard may force a purchase that was not strictly needed.
class HamiltonGuard final : public Guard {
 public:
  HamiltonGuard(const Session& s, bool directed, std::uint64_t budget)
      : Guard(s), directed_(directed), budget_(budget) {}

  std::vector<ItemId> witness() const override {
    std::vector<ItemId> items;
    const auto n = static_cast<std::uint32_t>(order_.size());
    for (std::uint32_t i = 0; i < n; ++i) items.push_back(u_.id(order_[i], order_[(i + 1) % n]));
    return items;
  }

 protected:
  bool repair(const ItemId* removed) override {
    if (removed) {
      const Endpoints e = u_.endpoints(*removed);
      // Position i with order_[i] -> order_[i+1] being the removed item.
      const auto n = static_cast<std::uint32_t>(order_.size());
      std::uint32_t i = pos_[e.u];
      if (!directed_ && order_[(i + 1) % n] != e.v) i = pos_[e.v];
      if (directed_ ? two_opt_directed(i) : two_opt(i)) return true;
    }
    return search();
  }

 private:
  Vertex at(std::uint32_t i) const { return order_[i % order_.size()]; }
  bool ok(Vertex a, Vertex b) const { return available(u_.id(a, b)); }

  void replace(Vertex a, Vertex b, Vertex c, Vertex d) {
    remove_item(u_.id(a, b));
    add_item(u_.id(c, d));
  }

  void reindex() {
    for (std::uint32_t i = 0; i < order_.size(); ++i) pos_[order_[i]] = i;
  }

  // Cycle edge (c_i, c_i+1) is gone; try (c_i, c_j) + (c_i+1, c_j+1).
  bool two_opt(std::uint32_t i) {
    const auto n = static_cast<std::uint32_t>(order_.size());
    const Vertex a = at(i), b = at(i + 1);
    for (std::uint32_t k = 2; k + 1 < n; ++k) {
      const std::uint32_t j = i + k;
      const Vertex c = at(j), d = at(j + 1);
      if (!ok(a, c) || !ok(b, d)) continue;
      remove_item(u_.id(a, b));
      replace(c, d, a, c);
      add_item(u_.id(b, d));
      // Reverse c_{i+1} .. c_j.
      for (std::uint32_t lo = i + 1, hi = j; lo < hi; ++lo, --hi) {
        std::swap(order_[lo % n], order_[hi % n]);
      }
      reindex();
      return true;
    }
    return false;
  }

  // Arc c_i -> c_i+1 is gone. Move the segment c_i+1 .. c_j between c_k and
  // c_k+1 elsewhere on the cycle: needs c_i -> c_j+1, c_k -> c_i+1, c_j -> c_k+1.
  bool two_opt_directed(std::uint32_t i) {
    const auto n = static_cast<std::uint32_t>(order_.size());
    const Vertex a = at(i), b = at(i + 1);
    for (std::uint32_t len = 1; len + 2 < n; ++len) {
      const Vertex c = at(i + len), d = at(i + len + 1);
      if (!ok(a, d)) continue;
      for (std::uint32_t k = len + 1; k < n; ++k) {
        const Vertex x = at(i + k), y = at(i + k + 1);
        if (!ok(x, b) || !ok(c, y)) continue;
        remove_item(u_.id(a, b));
        remove_item(u_.id(c, d));
        remove_item(u_.id(x, y));
        add_item(u_.id(a, d));
        add_item(u_.id(x, b));
        add_item(u_.id(c, y));
        std::vector<Vertex> next;
        next.reserve(n);
        next.push_back(a);
        for (std::uint32_t t = len + 1; t <= k; ++t) next.push_back(at(i + t));
        for (std::uint32_t t = 1; t <= len; ++t) next.push_back(at(i + t));
        for (std::uint32_t t = k + 1; t < n; ++t) next.push_back(at(i + t));
        order_ = std::move(next);
        reindex();
        return true;
      }
    }
    return false;
  }

  bool search() {
    const Vertex n = u_.vertices();
    Adjacency out(n), in(n);
    for (Vertex a = 0; a < n; ++a) {
      for (Vertex b = directed_ ? 0 : a + 1; b < n; ++b) {
        if (a == b || !ok(a, b)) continue;
        out[a].push_back(b);
        in[b].push_back(a);
        if (!directed_) out[b].push_back(a);
      }
    }
    const HamiltonResult r = find_hamilton_cycle(out, directed_ ? in : out, directed_, budget_);
    if (r.status != HamiltonStatus::found) return false;
    if (!order_.empty()) {
      for (ItemId id : witness()) remove_item(id);
    }
    order_ = r.cycle;
    pos_.assign(n, 0);
    reindex();
    for (ItemId id : witness()) add_item(id);
    return true;
  }

  bool directed_;
  std::uint64_t budget_;
  std::vector<Vertex> order_;
  std::vector<std::uint32_t> pos_;
};

// ell length-two paths with distinct endpoint pairs, taken as a star with
// d leaves, C(d, 2) >= ell. Purchased edges are preferred as leaves. A
// greedy witness: a family without a big enough star is not searched for.
class WedgeGuard final : public Guard {
 public:
  WedgeGuard(const Session& s, std::uint32_t ell) : Guard(s), ell_(ell) {
    if (ell == 0) throw std::invalid_argument("paths-len2 needs ell >= 1");
    while (static_cast<std::uint64_t>(leaves_) * (leaves_ - 1) / 2 < ell) ++leaves_;
  }

  // Wedges as consecutive pairs.
  std::vector<ItemId> structure() const override {
    std::vector<ItemId> out;
    for (std::uint32_t i = 0; i < leaf_.size() && out.size() < 2 * ell_; ++i) {
      for (std::uint32_t j = i + 1; j < leaf_.size() && out.size() < 2 * ell_; ++j) {
        out.push_back(u_.id(center_, leaf_[i]));
        out.push_back(u_.id(center_, leaf_[j]));
      }
    }
    return out;
  }

 protected:
  bool repair(const ItemId*) override {
    const Vertex n = u_.vertices();
    for (Vertex k = 0; k < n; ++k) {
      const Vertex c = (center_ + k) % n;
      std::vector<Vertex> have, fresh;
      for (Vertex w = 0; w < n; ++w) {
        if (w == c) continue;
        const ItemId id = u_.id(c, w);
        if (bought(id)) {
          have.push_back(w);
        } else if (available(id)) {
          fresh.push_back(w);
        }
      }
      for (std::size_t i = 0; have.size() < leaves_ && i < fresh.size(); ++i) have.push_back(fresh[i]);
      if (have.size() < leaves_) continue;
      have.resize(leaves_);
      center_ = c;
      leaf_ = have;
      std::vector<ItemId> items;
      for (Vertex w : leaf_) items.push_back(u_.id(c, w));
      set_witness(std::move(items));
      return true;
    }
    return false;
  }

 private:
  std::uint32_t ell_;
  std::uint32_t leaves_ = 2;
  Vertex center_ = 0;
  std::vector<Vertex> leaf_;
};

void require(const Session& s, UniverseKind kind, const std::string& structure) {
  if (s.universe().kind() != kind) {
    throw std::invalid_argument(structure + " needs a " + std::string(to_string(kind)) + " universe");
  }
}

}  // namespace

std::unique_ptr<Guard> make_guard(const std::string& structure, const Session& session,
                                  std::uint32_t param) {
  const ItemUniverse& u = session.universe();
  const Vertex n = u.vertices();
  auto undirected = [&] { require(session, UniverseKind::undirected_edges, structure); };
  if (structure == "shortest-path") {
    undirected();
    return std::make_unique<PathGuard>(session, 0, n - 1);
  }
  if (structure == "triangle") {
    undirected();
    return std::make_unique<CliqueGuard>(session, 3);
  }
  if (structure == "clique") {
    undirected();
    return std::make_unique<CliqueGuard>(session, param);
  }
  if (structure == "paths-len2") {
    undirected();
    return std::make_unique<WedgeGuard>(session, param);
  }
  if (structure == "spanning-tree") {
    undirected();
    return std::make_unique<SpanningTreeGuard>(session);
  }
  if (structure == "arborescence") {
    require(session, UniverseKind::directed_arcs, structure);
    return std::make_unique<ArborescenceGuard>(session);
  }
  if (structure == "bipartite-pm") {
    require(session, UniverseKind::bipartite_edges, structure);
    return std::make_unique<MatchingGuard>(session, n, [&u](Vertex a, Vertex b) { return u.id(a, b); }, 0);
  }
  if (structure == "pm-complete") {
    undirected();
    if (n % 2) throw std::invalid_argument("pm-complete needs even n");
    const Vertex m = n / 2;
    return std::make_unique<MatchingGuard>(
        session, m, [&u, m](Vertex a, Vertex b) { return u.id(a, m + b); }, m);
  }
  if (structure == "hamilton") {
    undirected();
    return std::make_unique<HamiltonGuard>(session, false, param ? param : 200000);
  }
  if (structure == "hamilton-directed") {
    require(session, UniverseKind::directed_arcs, structure);
    return std::make_unique<HamiltonGuard>(session, true, param ? param : 200000);
  }
  throw std::invalid_argument("no guard for '" + structure + "'");
}

bool must_take_guard(const Session& session, ItemId current, const std::string& structure,
                     std::uint32_t param) {
  if (current >= session.size()) throw std::out_of_range("item outside the universe");
  if (session.accepted(current)) return false;
  // The current item counts as rejected: the session must show it inspected.
  if (!session.inspected(current)) {
    throw std::logic_error("must_take_guard expects the current item to be the pending event");
  }
  const bool hamilton = structure == "hamilton" || structure == "hamilton-directed";
  auto g = make_guard(structure, session, hamilton ? 0 : param);
  return !g->initialize();
}

}  // namespace onbuy

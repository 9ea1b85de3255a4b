// Perfect matchings through a random 3-out bipartite graph. Each inspected
// edge gets a fair coin: red edges feed the 3-purchase of their U end,
// blue ones that of their V end, so no edge is chosen from both sides.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "onbuy/matching.hpp"
#include "onbuy/strategies.hpp"

namespace onbuy {

namespace {

constexpr int kOut = 3;

class MatchPlan final : public Plan {
 public:
  // offset > 0: crossing pairs (x, offset + y) of K_n; otherwise K_{m,m}.
  MatchPlan(const ItemUniverse& u, std::uint32_t m, std::uint32_t offset, const RhoTable& k_table,
            const RhoTable& repair_table, RngHandle coins)
      : u_(u), m_(m), offset_(offset), k_table_(k_table), repair_table_(repair_table), rng_(coins),
        matcher_(m), left_(2 * m, m), got_(2 * m, 0), adj_(m), active_(2 * m) {}

  bool decide(const InspectionEvent& ev) override {
    take_ = false;
    if (!decode(ev.item)) return false;
    const Vertex ends[2] = {x_, m_ + y_};
    if (repairing_) {
      if (!reach_u_[x_] || !reach_v_[y_]) return false;
      const double frac = static_cast<double>(u_.size() - ev.position + 1) / static_cast<double>(u_.size());
      const double cand = static_cast<double>(count_u_) * static_cast<double>(count_v_) * frac;
      const auto left = static_cast<std::uint64_t>(std::max(1.0, std::round(cand)));
      take_ = ev.cost < repair_table_.threshold(1, std::min(left, repair_table_.n_max()));
      return take_;
    }
    const Vertex owner = rng_.coin() ? ends[0] : ends[1];
    const std::uint64_t left = left_[owner];
    const int needed = kOut - got_[owner];
    if (needed <= 0) return false;
    owner_ = owner;
    const auto estimate = 1 + static_cast<std::uint64_t>(std::llround(static_cast<double>(left - 1) / 2));
    take_ = ev.cost < k_table_.threshold(needed, estimate);
    return take_;
  }

  void commit(const InspectionEvent& ev, bool bought) override {
    if (!decode(ev.item)) return;
    for (const Vertex v : {x_, m_ + y_}) {
      if (--left_[v] == 0 && got_[v] < kOut) --active_;
    }
    if (bought) {
      if (take_ && !repairing_ && ++got_[owner_] == kOut) {
        ++finished_;
        if (left_[owner_] > 0) --active_;
      }
      matcher_.add_edge(x_, y_);
      adj_[x_].push_back(y_);
    }
    if (repairing_) {
      if (bought) refresh();
    } else if (active_ == 0 && !matcher_.perfect()) {
      // Every vertex has its three edges (or nothing left to choose from)
      // and the union has no perfect matching: buy augmenting edges.
      repairing_ = true;
      refresh();
    }
  }

  bool complete() const override { return matcher_.perfect(); }

  std::vector<ItemId> structure() const override {
    const Matching& mt = matcher_.matching();
    std::vector<ItemId> out;
    for (Vertex x = 0; x < m_; ++x) {
      if (mt.mate_u[x] != kUnmatched) out.push_back(item(x, mt.mate_u[x]));
    }
    return out;
  }

  void annotate(StrategyOutcome& out) const override {
    out.stats["completed_purchases"] = static_cast<double>(finished_);
    out.stats["repair_mode"] = repairing_ ? 1.0 : 0.0;
    if (repairing_) out.fallback_used = true;
  }

 private:
  ItemId item(Vertex x, Vertex y) const { return u_.id(x, offset_ + y); }

  bool decode(ItemId id) {
    const Endpoints e = u_.endpoints(id);
    if (offset_ > 0 && (e.u >= offset_ || e.v < offset_)) return false;
    x_ = e.u;
    y_ = e.v - offset_;
    return true;
  }

  // U vertices reachable from a free U vertex and V vertices reachable from
  // a free V vertex along alternating paths: an edge between the two sets
  // augments the matching.
  void refresh() {
    const Matching& mt = matcher_.matching();
    reach_u_.assign(m_, 0);
    reach_v_.assign(m_, 0);
    std::vector<std::vector<Vertex>> radj(m_);
    for (Vertex x = 0; x < m_; ++x) {
      for (Vertex y : adj_[x]) radj[y].push_back(x);
    }
    std::vector<Vertex> queue;
    for (Vertex x = 0; x < m_; ++x) {
      if (mt.mate_u[x] == kUnmatched) reach_u_[x] = 1, queue.push_back(x);
    }
    for (std::size_t h = 0; h < queue.size(); ++h) {
      for (Vertex y : adj_[queue[h]]) {
        const Vertex x2 = mt.mate_v[y];
        if (x2 != kUnmatched && !reach_u_[x2]) reach_u_[x2] = 1, queue.push_back(x2);
      }
    }
    queue.clear();
    for (Vertex y = 0; y < m_; ++y) {
      if (mt.mate_v[y] == kUnmatched) reach_v_[y] = 1, queue.push_back(y);
    }
    for (std::size_t h = 0; h < queue.size(); ++h) {
      for (Vertex x : radj[queue[h]]) {
        const Vertex y2 = mt.mate_u[x];
        if (y2 != kUnmatched && !reach_v_[y2]) reach_v_[y2] = 1, queue.push_back(y2);
      }
    }
    count_u_ = static_cast<std::uint64_t>(std::count(reach_u_.begin(), reach_u_.end(), 1));
    count_v_ = static_cast<std::uint64_t>(std::count(reach_v_.begin(), reach_v_.end(), 1));
  }

  const ItemUniverse& u_;
  std::uint32_t m_, offset_;
  const RhoTable& k_table_;
  const RhoTable& repair_table_;
  Rng rng_;
  mutable IncrementalMatcher matcher_;  // matching() settles lazily
  std::vector<std::uint64_t> left_;  // U vertices, then V vertices
  std::vector<int> got_;
  std::vector<std::vector<Vertex>> adj_;
  Vertex x_ = 0, y_ = 0, owner_ = 0;
  bool take_ = false;
  std::uint64_t finished_ = 0;
  bool repairing_ = false;
  std::vector<char> reach_u_, reach_v_;
  std::uint64_t count_u_ = 0, count_v_ = 0;
  std::uint32_t active_;  // vertices with an unfinished 3-purchase
};

class MatchingStrategy final : public Strategy {
 public:
  MatchingStrategy(const StrategyInfo& info, std::uint32_t n, bool complete)
      : Strategy(info, ItemUniverse::make(complete ? UniverseKind::undirected_edges : UniverseKind::bipartite_edges, n)),
        m_(complete ? n / 2 : n), offset_(complete ? n / 2 : 0),
        k_table_(kOut, std::max<std::uint64_t>(kOut, m_)),
        repair_table_(1, static_cast<std::uint64_t>(m_) * m_) {}

  StrategyOutcome run(Session& session, RngHandle purchaser) const override {
    MatchPlan plan(universe(), m_, offset_, k_table_, repair_table_, purchaser.fork(0x636f696e));
    auto guard = make_guard(info().name, session);
    return drive(session, plan, *guard, info().name);
  }

 private:
  std::uint32_t m_, offset_;
  RhoTable k_table_, repair_table_;
};

}  // namespace

std::unique_ptr<Strategy> make_matching(const StrategyInfo& info, std::uint32_t n, const Params&) {
  const bool complete = info.name == "pm-complete";
  if (complete && (n % 2 != 0 || n < 2)) throw std::invalid_argument("pm-complete needs an even n >= 2");
  if (!complete && n < 2) throw std::invalid_argument("bipartite-pm needs n >= 2");
  return std::make_unique<MatchingStrategy>(info, n, complete);
}

}  // namespace onbuy

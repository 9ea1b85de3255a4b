// Length-two paths, triangles and larger cliques under random order.
//
// A triangle: vertex-disjoint cheap edges in the first third (red), cheap
// edges extending them to wedges with distinct endpoint pairs in the second
// (blue), and one edge closing a wedge in the last third (green), bought by
// the 1-purchase rule over the closable pairs still unseen.
//
// K_r, r > 3: a star at a hub bought by an l-purchase over the red half,
// then K_{r-1} among the star's leaves from the blue half. The leaf pairs
// still unseen form a random subgraph; thresholds of the inner builder are
// scaled by its inverse density.

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <unordered_map>

#include "onbuy/strategies.hpp"

namespace onbuy {

namespace {

constexpr Vertex kNone = 0xffffffffu;

struct TriangleSizing {
  std::uint64_t ell = 1, k = 1;
  double red = 0, blue = 0;  // thresholds before density scaling
};

TriangleSizing size_triangle(std::uint32_t m, double ell_override = 0) {
  TriangleSizing s;
  const double mm = m;
  const double ell = ell_override > 0 ? ell_override : std::pow(0.75, 3.0 / 7) * std::pow(mm, 4.0 / 7);
  s.ell = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(ell)));
  const double k = std::cbrt(static_cast<double>(s.ell * s.ell) * mm / 5);
  s.k = std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::llround(k)), 1, std::max<std::uint32_t>(1, m / 2));
  s.red = 10.0 * static_cast<double>(s.k) / (mm * mm);
  s.blue = 2.0 * static_cast<double>(s.ell) / (static_cast<double>(s.k) * mm);
  return s;
}

class Builder {
 public:
  Builder(const Session& s, const std::vector<Vertex>& verts, std::uint64_t items)
      : s_(s), u_(s.universe()), verts_(verts), in_(s.universe().vertices(), 0), items_(items) {
    for (Vertex v : verts_) in_[v] = 1;
  }
  virtual ~Builder() = default;

  bool contains(const Endpoints& e) const { return in_[e.u] && in_[e.v]; }
  virtual bool decide(const InspectionEvent& ev, const Endpoints& e) = 0;
  virtual void commit(const InspectionEvent& ev, const Endpoints& e, bool bought) = 0;
  virtual bool done() const = 0;
  virtual bool stuck() const = 0;
  virtual std::vector<Vertex> clique() const = 0;
  virtual void annotate(StrategyOutcome&, const std::string&) const {}

 protected:
  bool fresh(ItemId id, ItemId current) const { return id == current || !s_.inspected(id); }

  const Session& s_;
  const ItemUniverse& u_;
  std::vector<Vertex> verts_;
  std::vector<char> in_;
  std::uint64_t items_;  // length of this builder's share of the stream
  std::uint64_t pos_ = 0;
};

class TriangleBuilder final : public Builder {
 public:
  // scale = C(m,2) / items; wedges_only stops once `ell` wedges exist.
  TriangleBuilder(const Session& s, const std::vector<Vertex>& verts, std::uint64_t items, double scale,
                  const TriangleSizing& size, bool wedges_only)
      : Builder(s, verts, items), size_(size), wedges_only_(wedges_only),
        red_thr_(size.red * scale), blue_thr_(size.blue * scale), partner_(s.universe().vertices(), kNone),
        table_(1, std::max<std::uint64_t>(2, size.ell + 1)) {
    red_end_ = items / 3;
    blue_end_ = 2 * (items / 3);
  }

  bool decide(const InspectionEvent& ev, const Endpoints& e) override {
    ++pos_;
    proposal_ = {};
    if (pos_ <= red_end_) {
      if (reds_ < size_.k && ev.cost <= red_thr_ && partner_[e.u] == kNone && partner_[e.v] == kNone) {
        proposal_.red = true;
      }
      return proposal_.red;
    }
    if (pos_ <= blue_end_) {
      if (wedges_.size() >= size_.ell || ev.cost > blue_thr_) return false;
      for (const auto& [x, y] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
        const Vertex a = partner_[x];
        if (a == kNone || a == y) continue;
        const ItemId close = u_.id(a, y);
        if (closing_.count(close) || proposal_.count == 2) continue;
        // A wedge whose closing edge is gone cannot become a triangle.
        if (!wedges_only_ && s_.inspected(close) && !bought_.count(close)) continue;
        // The same pair from both ends counts once.
        if (proposal_.count == 1 && proposal_.w[0].close == close) continue;
        proposal_.w[proposal_.count++] = {a, x, y, u_.id(a, x), ev.item, close};
      }
      return proposal_.count > 0;
    }
    if (wedges_only_) return false;
    if (!green_) {
      green_ = true;
      for (const auto& w : wedges_) closable_ += fresh(w.close, ev.item) ? 1 : 0;
    }
    const auto it = closing_.find(ev.item);
    if (it == closing_.end()) return false;
    const std::uint64_t left = closable_--;
    return ev.cost < table_.threshold(1, std::min<std::uint64_t>(left, table_.n_max()));
  }

  void commit(const InspectionEvent& ev, const Endpoints& e, bool bought) override {
    if (!bought) return;
    bought_[ev.item] = 1;
    if (pos_ <= red_end_) {
      if (proposal_.red) {
        partner_[e.u] = e.v;
        partner_[e.v] = e.u;
        ++reds_;
      }
      return;
    }
    if (pos_ <= blue_end_) {
      for (int i = 0; i < proposal_.count && wedges_.size() < size_.ell; ++i) {
        const Wedge& w = proposal_.w[i];
        closing_[w.close] = wedges_.size();
        wedges_.push_back(w);
        if (!wedges_only_ && bought_.count(w.close)) found_ = wedges_.size() - 1;
      }
      return;
    }
    const auto it = closing_.find(ev.item);
    if (it != closing_.end()) found_ = it->second;
  }

  bool done() const override {
    return wedges_only_ ? wedges_.size() >= size_.ell : found_ != kUnset;
  }
  bool stuck() const override {
    if (done()) return false;
    if (wedges_only_) return pos_ > blue_end_;
    return green_ && closable_ == 0;
  }
  std::vector<Vertex> clique() const override {
    const Wedge& w = wedges_[found_];
    return {w.a, w.x, w.y};
  }
  std::vector<ItemId> wedge_items() const {
    std::vector<ItemId> out;
    for (std::size_t i = 0; i < size_.ell && i < wedges_.size(); ++i) {
      out.push_back(wedges_[i].red);
      out.push_back(wedges_[i].blue);
    }
    return out;
  }
  void annotate(StrategyOutcome& out, const std::string& prefix) const override {
    out.stats[prefix + "red"] = static_cast<double>(reds_);
    out.stats[prefix + "wedges"] = static_cast<double>(wedges_.size());
    out.stats[prefix + "ell"] = static_cast<double>(size_.ell);
  }

 private:
  static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  // Path a - x - y; x is a red endpoint whose red partner is a.
  struct Wedge {
    Vertex a = 0, x = 0, y = 0;
    ItemId red = 0, blue = 0, close = 0;
  };
  struct Proposal {
    bool red = false;
    int count = 0;
    Wedge w[2];
  };

  TriangleSizing size_;
  bool wedges_only_;
  double red_thr_, blue_thr_;
  std::uint64_t red_end_ = 0, blue_end_ = 0;
  std::vector<Vertex> partner_;
  std::uint64_t reds_ = 0;
  std::vector<Wedge> wedges_;
  std::unordered_map<ItemId, std::size_t> closing_;
  std::unordered_map<ItemId, char> bought_;
  bool green_ = false;
  std::uint64_t closable_ = 0;
  std::size_t found_ = kUnset;
  Proposal proposal_;
  RhoTable table_;
};

std::unique_ptr<Builder> make_builder(const Session& s, const std::vector<Vertex>& verts, std::uint64_t items,
                                      double scale, std::uint32_t r);

class CliqueBuilder final : public Builder {
 public:
  CliqueBuilder(const Session& s, const std::vector<Vertex>& verts, std::uint64_t items, std::uint32_t r,
                ItemId current)
      : Builder(s, verts, items), r_(r), hub_(verts.front()) {
    const double m = static_cast<double>(verts.size());
    const double ell = std::pow(m, 1.0 / (clique_exponent(static_cast<int>(r) - 1) + 2));
    ell_ = std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::llround(ell)), 1, verts.size() - 1);
    floor_ = ell_ < 3 * (r - 1);
    red_end_ = items / 2;
    for (Vertex w : verts_) hub_left_ += (w != hub_ && fresh(u_.id(hub_, w), current)) ? 1 : 0;
    if (!floor_) table_ = std::make_unique<RhoTable>(static_cast<int>(ell_), std::max<std::uint64_t>(ell_, hub_left_));
  }

  bool decide(const InspectionEvent& ev, const Endpoints& e) override {
    ++pos_;
    const bool at_hub = e.u == hub_ || e.v == hub_;
    bool take = false;
    if (pos_ <= red_end_) {
      if (at_hub && !floor_ && leaves_.size() < ell_) {
        const double frac =
            static_cast<double>(red_end_ - pos_) / static_cast<double>(std::max<std::uint64_t>(1, items_ - pos_));
        const auto left = 1 + static_cast<std::uint64_t>(std::llround(static_cast<double>(hub_left_ - 1) * frac));
        const int needed = static_cast<int>(ell_ - leaves_.size());
        take = ev.cost < table_->threshold(needed, std::min(left, table_->n_max()));
      }
    } else {
      if (!tried_ && !floor_ && leaves_.size() + 1 >= r_) start_inner(ev.item);
      if (inner_ && inner_->contains(e)) take = inner_->decide(ev, e);
    }
    if (at_hub) --hub_left_;
    return take;
  }

  void commit(const InspectionEvent& ev, const Endpoints& e, bool bought) override {
    if (pos_ <= red_end_) {
      if (bought) leaves_.push_back(e.u == hub_ ? e.v : e.u);
      return;
    }
    if (inner_ && inner_->contains(e)) inner_->commit(ev, e, bought);
  }

  bool done() const override { return inner_ && inner_->done(); }
  bool stuck() const override {
    if (floor_) return true;
    if (pos_ <= red_end_) return false;
    if (leaves_.size() + 1 < r_ || (tried_ && !inner_)) return true;
    return inner_ && inner_->stuck();
  }
  std::vector<Vertex> clique() const override {
    auto c = inner_->clique();
    c.push_back(hub_);
    return c;
  }
  void annotate(StrategyOutcome& out, const std::string& prefix) const override {
    out.stats[prefix + "star"] = static_cast<double>(leaves_.size());
    out.stats[prefix + "ell"] = static_cast<double>(ell_);
    if (inner_) inner_->annotate(out, prefix + "inner_");
  }

 private:
  void start_inner(ItemId current) {
    tried_ = true;
    std::uint64_t pairs = 0;
    for (std::size_t i = 0; i < leaves_.size(); ++i) {
      for (std::size_t j = i + 1; j < leaves_.size(); ++j) pairs += fresh(u_.id(leaves_[i], leaves_[j]), current);
    }
    if (pairs == 0) return;
    const double all = static_cast<double>(leaves_.size()) * (leaves_.size() - 1) / 2;
    inner_ = make_builder(s_, leaves_, pairs, all / static_cast<double>(pairs), r_ - 1);
  }

  std::uint32_t r_;
  Vertex hub_;
  std::uint64_t ell_ = 1;
  bool floor_ = false;
  std::uint64_t red_end_ = 0;
  std::uint64_t hub_left_ = 0;
  std::unique_ptr<RhoTable> table_;
  std::vector<Vertex> leaves_;
  std::unique_ptr<Builder> inner_;
  bool tried_ = false;
};

std::unique_ptr<Builder> make_builder(const Session& s, const std::vector<Vertex>& verts, std::uint64_t items,
                                      double scale, std::uint32_t r) {
  if (r == 3) {
    return std::make_unique<TriangleBuilder>(s, verts, items, scale,
                                             size_triangle(static_cast<std::uint32_t>(verts.size())), false);
  }
  return std::make_unique<CliqueBuilder>(s, verts, items, r, kNone);
}

class WedgePlan final : public Plan {
 public:
  WedgePlan(const Session& s, std::unique_ptr<Builder> b) : u_(s.universe()), b_(std::move(b)) {}

  bool decide(const InspectionEvent& ev) override {
    const Endpoints e = u_.endpoints(ev.item);
    return b_->decide(ev, e);
  }
  void commit(const InspectionEvent& ev, bool bought) override { b_->commit(ev, u_.endpoints(ev.item), bought); }
  bool complete() const override { return b_->done(); }
  bool stuck() const override { return b_->stuck(); }
  std::vector<ItemId> structure() const override {
    if (const auto* t = dynamic_cast<const TriangleBuilder*>(b_.get()); t && wedges_) return t->wedge_items();
    const auto c = b_->clique();
    std::vector<ItemId> out;
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = i + 1; j < c.size(); ++j) out.push_back(u_.id(c[i], c[j]));
    }
    return out;
  }
  void annotate(StrategyOutcome& out) const override { b_->annotate(out, ""); }
  void set_wedges() { wedges_ = true; }

 private:
  const ItemUniverse& u_;
  std::unique_ptr<Builder> b_;
  bool wedges_ = false;
};

class WedgeStrategy final : public Strategy {
 public:
  WedgeStrategy(const StrategyInfo& info, std::uint32_t n, std::uint32_t r, TriangleSizing sizing)
      : Strategy(info, ItemUniverse::make(UniverseKind::undirected_edges, n)), r_(r), sizing_(sizing) {}

  StrategyOutcome run(Session& session, RngHandle) const override {
    std::vector<Vertex> all(n());
    for (Vertex v = 0; v < n(); ++v) all[v] = v;
    const bool wedges = info().name == "paths-len2";
    std::unique_ptr<Builder> b;
    if (r_ == 3) {
      b = std::make_unique<TriangleBuilder>(session, all, universe().size(), 1.0, sizing_, wedges);
    } else {
      b = std::make_unique<CliqueBuilder>(session, all, universe().size(), r_, kNone);
    }
    WedgePlan plan(session, std::move(b));
    if (wedges) plan.set_wedges();
    const std::uint32_t param = wedges ? static_cast<std::uint32_t>(sizing_.ell) : r_;
    auto guard = make_guard(wedges ? "paths-len2" : "clique", session, param);
    return drive(session, plan, *guard, wedges ? "paths-len2" : "clique", param);
  }

 private:
  std::uint32_t r_;
  TriangleSizing sizing_;
};

}  // namespace

std::unique_ptr<Strategy> make_wedge_family(const StrategyInfo& info, std::uint32_t n, const Params& p) {
  if (info.name == "clique") {
    const auto r = p.integer("r", 4);
    if (r < 3) throw std::invalid_argument("clique needs r >= 3");
    if (static_cast<std::uint64_t>(r) > n) throw std::invalid_argument("clique needs r <= n");
    return std::make_unique<WedgeStrategy>(info, n, static_cast<std::uint32_t>(r), size_triangle(n));
  }
  if (n < 3) throw std::invalid_argument(info.name + " needs n >= 3");
  if (info.name == "triangle") {
    return std::make_unique<WedgeStrategy>(info, n, 3, size_triangle(n, p.number("ell", 0)));
  }
  const double ell = p.number("ell", std::max(1.0, std::round(std::pow(static_cast<double>(n), 4.0 / 7))));
  if (ell < 1 || ell > n / 10.0 + 1) throw std::invalid_argument("paths-len2 needs 1 <= ell <= n/10");
  TriangleSizing s = size_triangle(n, ell);
  s.k = static_cast<std::uint64_t>(p.integer("k", static_cast<std::int64_t>(s.k)));
  if (s.k < 1 || s.k > n / 2) throw std::invalid_argument("k must lie in [1, n/2]");
  const double nn = n;
  s.red = p.number("red_threshold", 10.0 * static_cast<double>(s.k) / (nn * nn));
  s.blue = p.number("blue_threshold", 2.0 * static_cast<double>(s.ell) / (static_cast<double>(s.k) * nn));
  return std::make_unique<WedgeStrategy>(info, n, 3, s);
}

}  // namespace onbuy

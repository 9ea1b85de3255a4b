// Shortest 0 -> n-1 path under random order. Two layered trees grow from
// the endpoints in the first and second thirds of the stream; the last
// third buys one edge joining them.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "onbuy/strategies.hpp"

namespace onbuy {

namespace {

// Expected cost with branching d: every tree edge costs about p/2, the
// closing edge about 2/m with m = |T||T'|/3 candidates left in the last
// third.
double path_cost_model(double d, int k, double n) {
  double sum = 0, power = 1;
  for (int l = 1; l <= k; ++l) {
    power *= d;
    sum += power;
  }
  const double size = 1 + sum;
  return 3.0 * k * d * sum / n + 6.0 / (size * size);
}

}  // namespace

PathDesign design_shortest_path(std::uint32_t n, const Params& params) {
  PathDesign d;
  const double nn = n;
  const double loglog = n > 2 ? std::ceil(std::log(std::log(nn))) : 0.0;
  d.layers = static_cast<int>(params.integer("layers", std::max<std::int64_t>(2, static_cast<std::int64_t>(loglog))));
  if (d.layers < 1) throw std::invalid_argument("layers must be >= 1");
  d.eps = params.number("eps", 0.0);
  if (d.eps < 0 || d.eps >= 1) throw std::invalid_argument("eps must lie in [0, 1)");
  const int k = d.layers;
  if (params.has("p")) {
    d.p = params.number("p", 0);
  } else if (params.has("alpha")) {
    const double alpha = params.number("alpha", 1.0 / 3);
    if (alpha <= 0 || alpha >= 1) throw std::invalid_argument("alpha must lie in (0, 1)");
    d.p = std::pow(nn, -1.0 + alpha / k);
  } else {
    // Golden-section search over log d.
    double lo = 0.0, hi = std::log(std::max(nn, 3.0));
    const double g = (std::sqrt(5.0) - 1) / 2;
    for (int it = 0; it < 100; ++it) {
      const double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
      if (path_cost_model(std::exp(a), k, nn) < path_cost_model(std::exp(b), k, nn)) {
        hi = b;
      } else {
        lo = a;
      }
    }
    d.p = 3.0 * k * std::exp((lo + hi) / 2) / nn;
  }
  if (!(d.p > 0)) throw std::invalid_argument("p must be positive");
  d.p = std::min(d.p, 1.0);
  const double branching = (1 - d.eps) * nn * d.p / (3.0 * k);
  for (int l = 1; l <= k; ++l) {
    d.caps.push_back(static_cast<std::uint64_t>(std::ceil(std::pow(branching, l) - 1e-9)));
  }
  return d;
}

namespace {

constexpr Vertex kNone = 0xffffffffu;

struct Tree {
  std::vector<int> layer;  // -1 outside
  std::vector<Vertex> parent;
  std::vector<std::uint64_t> count;  // count[l] for l = 0..k
  std::uint64_t size = 1;

  std::vector<Vertex> members;

  Tree(std::uint32_t n, int k, Vertex root) : layer(n, -1), parent(n, kNone), count(k + 1, 0), members{root} {
    layer[root] = 0;
    count[0] = 1;
  }
  bool has(Vertex v) const { return layer[v] >= 0; }
  void add(Vertex v, Vertex from) {
    layer[v] = layer[from] + 1;
    parent[v] = from;
    ++count[layer[v]];
    ++size;
    members.push_back(v);
  }
};

class PathPlan final : public Plan {
 public:
  PathPlan(const Session& s, const PathDesign& d, const RhoTable& table)
      : s_(s), u_(s.universe()), d_(d), table_(table), n_(u_.vertices()), big_n_(u_.size()),
        x_end_(big_n_ / 3), y_end_(2 * (big_n_ / 3)), t_(n_, d.layers, 0), t2_(n_, d.layers, n_ - 1) {
    block_ = std::max<std::uint64_t>(1, x_end_ / d.layers);
    open_ = s.inspected(u_.id(0, n_ - 1)) ? 0 : 1;
  }

  bool decide(const InspectionEvent& ev) override {
    const Endpoints e = u_.endpoints(ev.item);
    pending_ = Pending{};
    if (ev.position <= y_end_) {
      const bool first = ev.position <= x_end_;
      if (ev.cost > d_.p) return false;
      const std::uint64_t rel = first ? ev.position - 1 : ev.position - x_end_ - 1;
      const int layer = static_cast<int>(std::min<std::uint64_t>(d_.layers - 1, rel / block_)) + 1;
      Tree& grow = first ? t_ : t2_;
      // A layer left short in its own block may still grow later.
      for (const auto& [a, c] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
        if (grow.layer[a] < 0 || grow.layer[a] >= layer || grow.has(c)) continue;
        if (grow.count[grow.layer[a] + 1] >= d_.caps[grow.layer[a]]) continue;
        pending_ = {first ? Kind::grow_t : Kind::grow_t2, a, c};
        return true;
      }
      return false;
    }
    // Closing third.
    Vertex a = e.u, c = e.v;
    if (!t_.has(a)) std::swap(a, c);
    if (!t_.has(a) || !t2_.has(c)) return false;
    // open_ counts the uninspected T x T' edges, this one included.
    double thr = table_.threshold(1, std::min(open_, table_.n_max()));
    const std::uint64_t sk = t_.count[d_.layers], sk2 = t2_.count[d_.layers];
    if (sk > 0 && sk2 > 0 && thr <= 1.0) {
      const double ln = std::log(static_cast<double>(n_));
      thr = std::min(thr, ln * ln / (static_cast<double>(sk) * static_cast<double>(sk2)));
    }
    if (ev.cost >= thr) return false;
    pending_ = {Kind::close, a, c};
    return true;
  }

  void commit(const InspectionEvent& ev, bool bought) override {
    const Endpoints e = u_.endpoints(ev.item);
    if ((t_.has(e.u) && t2_.has(e.v)) || (t_.has(e.v) && t2_.has(e.u))) --open_;
    if (!bought || pending_.kind == Kind::none) return;
    const auto [kind, a, c] = pending_;
    if (kind == Kind::close) {
      close(a, c);
    } else if (kind == Kind::grow_t) {
      t_.add(c, a);
      if (c == n_ - 1) {
        close(c, c);
      } else {
        count_open(c, t2_);
      }
    } else if (t_.has(c)) {
      // The mirror tree ran into the first tree.
      close(c, a);
    } else {
      t2_.add(c, a);
      count_open(c, t_);
    }
  }

  bool complete() const override { return !path_.empty(); }
  // No joining edge left to inspect.
  bool stuck() const override { return path_.empty() && s_.position() >= y_end_ && open_ == 0; }
  std::vector<ItemId> structure() const override { return path_; }

  void annotate(StrategyOutcome& out) const override {
    out.stats["tree_size"] = static_cast<double>(t_.size);
    out.stats["mirror_size"] = static_cast<double>(t2_.size);
    out.stats["layers"] = d_.layers;
    out.stats["p"] = d_.p;
  }

 private:
  enum class Kind { none, grow_t, grow_t2, close };
  struct Pending {
    Kind kind = Kind::none;
    Vertex a = 0, c = 0;
  };

  void count_open(Vertex v, const Tree& other) {
    for (Vertex w : other.members) open_ += s_.inspected(u_.id(v, w)) ? 0 : 1;
  }

  // a in T, c in T' (or a == c == n-1 reached inside T).
  void close(Vertex a, Vertex c) {
    std::vector<ItemId> left;
    for (Vertex v = a; t_.parent[v] != kNone; v = t_.parent[v]) left.push_back(u_.id(v, t_.parent[v]));
    std::reverse(left.begin(), left.end());
    if (a != c) left.push_back(u_.id(a, c));
    for (Vertex v = c; a != c && t2_.parent[v] != kNone; v = t2_.parent[v]) left.push_back(u_.id(v, t2_.parent[v]));
    path_ = std::move(left);
  }

  const Session& s_;
  const ItemUniverse& u_;
  const PathDesign& d_;
  const RhoTable& table_;
  std::uint32_t n_;
  std::uint64_t big_n_, x_end_, y_end_, block_, open_ = 0;
  Tree t_, t2_;
  Pending pending_;
  std::vector<ItemId> path_;
};

class ShortestPathStrategy final : public Strategy {
 public:
  ShortestPathStrategy(const StrategyInfo& info, std::uint32_t n, PathDesign d)
      : Strategy(info, ItemUniverse::make(UniverseKind::undirected_edges, n)), d_(std::move(d)),
        table_(1, closing_table_size(n, d_)) {}

  StrategyOutcome run(Session& session, RngHandle) const override {
    PathPlan plan(session, d_, table_);
    auto guard = make_guard("shortest-path", session);
    return drive(session, plan, *guard, "shortest-path");
  }

 private:
  // Closing candidates never exceed the product of the two trees' caps.
  static std::uint64_t closing_table_size(std::uint32_t n, const PathDesign& d) {
    double tree = 1;
    for (auto c : d.caps) tree += static_cast<double>(c);
    const double pairs = static_cast<double>(n) * (n - 1) / 2;
    return static_cast<std::uint64_t>(std::max(1.0, std::min(pairs, tree * tree)));
  }

  PathDesign d_;
  RhoTable table_;
};

}  // namespace

std::unique_ptr<Strategy> make_shortest_path(const StrategyInfo& info, std::uint32_t n, const Params& p) {
  return std::make_unique<ShortestPathStrategy>(info, n, design_shortest_path(n, p));
}

}  // namespace onbuy

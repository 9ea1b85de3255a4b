// Spanning trees of K_n and spanning arborescences of the complete digraph
// under random order.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "onbuy/functional.hpp"
#include "onbuy/graph.hpp"
#include "onbuy/strategies.hpp"

namespace onbuy {

double evaluate_buytree_cost(double alpha, double beta) {
  if (!(alpha > 0 && alpha < 1) || !(beta > 0)) throw std::invalid_argument("need 0 < alpha < 1 and beta > 0");
  const double gamma = alpha * beta;
  if (!(gamma > 1)) throw std::invalid_argument("need alpha * beta > 1");
  // x e^{-x} = gamma e^{-gamma}, x in (0, 1); the left side increases there.
  const double target = gamma * std::exp(-gamma);
  double lo = 0, hi = 1;
  while (hi - lo > 1e-12) {
    const double mid = (lo + hi) / 2;
    (mid * std::exp(-mid) < target ? lo : hi) = mid;
  }
  const double x = (lo + hi) / 2;
  const double p1 = beta / 2 * (1 - x / gamma + x * x / (2 * gamma));
  // Terms shrink like (gamma e^{1-gamma})^k; stop once the geometric tail
  // bound drops below 1e-12.
  const double ratio = gamma * std::exp(1 - gamma);
  double series = 0;
  for (int k = 1; k < 100000; ++k) {
    const double kk = k;
    const double log_term = (kk - 3) * std::log(kk) - std::lgamma(kk + 1) + (kk - 1) * std::log(gamma) - gamma * kk;
    const double term = std::exp(log_term);
    series += term;
    if (k > 2 && term * ratio / (1 - ratio) < 1e-12) break;
  }
  const double p2 = 2 / ((1 - alpha) * (1 - x / gamma)) * series;
  return p1 + p2;
}

namespace {

class TreePlan final : public Plan {
 public:
  TreePlan(const ItemUniverse& u, double alpha, double beta, const RhoTable& table)
      : u_(u), n_(u.vertices()), big_n_(u.size()), table_(table), dsu_(u.vertices()),
        giant_(u.vertices(), 0), attached_(u.vertices(), 0) {
    step1_end_ = static_cast<std::uint64_t>(std::floor(alpha * static_cast<double>(big_n_)));
    cheap_ = beta / n_;
  }

  bool decide(const InspectionEvent& ev) override {
    const Endpoints e = u_.endpoints(ev.item);
    if (ev.position <= step1_end_) return ev.cost <= cheap_ && !dsu_.same(e.u, e.v);
    if (!split_) freeze();
    if (giant_[e.u] == giant_[e.v]) return false;
    const Vertex small = giant_[e.u] ? e.v : e.u;
    const Vertex comp = comp_[small];
    if (attached_[comp]) return false;
    const double left = static_cast<double>(big_n_ - ev.position + 1) / static_cast<double>(big_n_);
    const double cand = static_cast<double>(size_[comp]) * static_cast<double>(giant_size_) * left;
    const auto m = static_cast<std::uint64_t>(std::max(1.0, std::round(cand)));
    pending_ = comp;
    return ev.cost < table_.threshold(1, std::min(m, table_.n_max()));
  }

  void commit(const InspectionEvent& ev, bool bought) override {
    if (!bought) return;
    const Endpoints e = u_.endpoints(ev.item);
    tree_.push_back(ev.item);
    dsu_.unite(e.u, e.v);
    if (split_) {
      attached_[pending_] = 1;
      --open_;
    }
  }

  bool complete() const override { return dsu_.components() == 1; }
  std::vector<ItemId> structure() const override { return tree_; }
  void annotate(StrategyOutcome& out) const override {
    out.stats["giant"] = static_cast<double>(giant_size_);
    out.stats["small_components"] = static_cast<double>(small_);
  }

 private:
  // End of step 1: fix the giant component and the small ones.
  void freeze() {
    split_ = true;
    comp_.resize(n_);
    size_.assign(n_, 0);
    for (Vertex v = 0; v < n_; ++v) {
      comp_[v] = dsu_.find(v);
      ++size_[comp_[v]];
    }
    const Vertex g = static_cast<Vertex>(std::max_element(size_.begin(), size_.end()) - size_.begin());
    giant_size_ = size_[g];
    for (Vertex v = 0; v < n_; ++v) giant_[v] = comp_[v] == g;
    for (Vertex v = 0; v < n_; ++v) small_ += (comp_[v] == v && v != g) ? 1 : 0;
    open_ = small_;
  }

  const ItemUniverse& u_;
  std::uint32_t n_;
  std::uint64_t big_n_, step1_end_;
  double cheap_;
  const RhoTable& table_;
  DisjointSets dsu_;
  bool split_ = false;
  std::vector<Vertex> comp_;
  std::vector<std::uint64_t> size_;
  std::vector<char> giant_, attached_;
  std::uint64_t giant_size_ = 0, small_ = 0, open_ = 0;
  Vertex pending_ = 0;
  std::vector<ItemId> tree_;
};

class SpanningTreeStrategy final : public Strategy {
 public:
  SpanningTreeStrategy(const StrategyInfo& info, std::uint32_t n, double alpha, double beta)
      : Strategy(info, ItemUniverse::make(UniverseKind::undirected_edges, n)), alpha_(alpha), beta_(beta),
        table_(1, std::max<std::uint64_t>(1, universe().size())) {}

  StrategyOutcome run(Session& session, RngHandle) const override {
    TreePlan plan(universe(), alpha_, beta_, table_);
    auto guard = make_guard("spanning-tree", session);
    return drive(session, plan, *guard, "spanning-tree");
  }

 private:
  double alpha_, beta_;
  RhoTable table_;
};

constexpr Vertex kNone = 0xffffffffu;

// Phase one: each vertex picks f(v) by a 1-purchase over its red out-arcs
// (the first (1-eps) share of the stream). Phase two: drop one arc per
// cycle of f, then merge trees with cheap blue arcs leaving a root.
class ArborescencePlan final : public Plan {
 public:
  ArborescencePlan(const ItemUniverse& u, double eps, double merge, const RhoTable& table)
      : u_(u), n_(u.vertices()), big_n_(u.size()), merge_(merge), table_(table), f_(u.vertices(), kNone),
        out_left_(u.vertices(), u.vertices() - 1) {
    red_end_ = static_cast<std::uint64_t>(std::floor((1 - eps) * static_cast<double>(big_n_)));
  }

  bool decide(const InspectionEvent& ev) override {
    const Endpoints a = u_.endpoints(ev.item);
    const std::uint64_t left = out_left_[a.u]--;
    current_ = a.u;
    if (f_[a.u] == kNone) {
      std::uint64_t m = left;
      if (ev.position <= red_end_) {
        const double frac = static_cast<double>(red_end_ - ev.position) /
                            static_cast<double>(std::max<std::uint64_t>(1, big_n_ - ev.position));
        m = 1 + static_cast<std::uint64_t>(std::llround(static_cast<double>(left - 1) * frac));
      }
      return ev.cost < table_.threshold(1, m);
    }
    if (!merging_ || ev.position <= red_end_) return false;
    if (!is_root_[a.u] || dsu_.same(a.u, a.v)) return false;
    (void)left;
    net_ = false;
    if (ev.cost <= merge_) return true;
    // Safety net for a stalled merge: one (roots - 1)-purchase over the
    // arcs still to come that join a root to another tree.
    const std::uint64_t m = useful_arcs();
    if (!joint_) joint_.emplace(static_cast<int>(roots_ - 1), m + 1);
    net_ = ev.cost < joint_->threshold(static_cast<int>(roots_ - 1), std::min(m, joint_->n_max() + 1));
    return net_;
  }

  void commit(const InspectionEvent& ev, bool bought) override {
    if (!bought) return;
    const Endpoints a = u_.endpoints(ev.item);
    if (f_[a.u] == kNone) {
      f_cost_ += ev.cost;
      f_[a.u] = a.v;
      arc_[a.u] = ev.item;
      if (++chosen_ == n_) split();
      return;
    }
    net_used_ = net_used_ || net_;
    arc_[a.u] = ev.item;
    is_root_[a.u] = 0;
    dsu_.unite(a.u, a.v);
    --roots_;
  }

  bool complete() const override { return merging_ && roots_ == 1; }
  std::vector<ItemId> structure() const override {
    std::vector<ItemId> out;
    for (Vertex v = 0; v < n_; ++v) {
      if (!is_root_[v]) out.push_back(arc_[v]);
    }
    return out;
  }
  void annotate(StrategyOutcome& out) const override {
    out.stats["components"] = static_cast<double>(components_);
    out.stats["roots_left"] = static_cast<double>(roots_);
    out.stats["mapping_cost"] = f_cost_;
    if (net_used_) out.fallback_used = true;
  }

 private:
  // Expected count, the current arc included; never increases.
  std::uint64_t useful_arcs() {
    double m = 0;
    for (const Vertex r : roots_list_) {
      if (!is_root_[r]) continue;
      m += static_cast<double>(out_left_[r] + (r == current_ ? 1 : 0)) * static_cast<double>(n_ - dsu_.size_of(r)) /
           static_cast<double>(n_ - 1);
    }
    return std::max<std::uint64_t>(roots_ - 1, static_cast<std::uint64_t>(std::llround(m)));
  }

  void split() {
    const FunctionalDigraph g = decompose_functional(f_);
    components_ = g.cycles.size();
    is_root_.assign(n_, 0);
    dsu_ = DisjointSets(n_);
    for (const auto& cycle : g.cycles) is_root_[cycle.front()] = 1, roots_list_.push_back(cycle.front());
    for (Vertex v = 0; v < n_; ++v) {
      if (!is_root_[v]) dsu_.unite(v, f_[v]);
    }
    roots_ = components_;
    merging_ = true;
  }

  const ItemUniverse& u_;
  std::uint32_t n_;
  std::uint64_t big_n_, red_end_ = 0;
  double merge_;
  const RhoTable& table_;
  std::vector<Vertex> f_;
  std::vector<ItemId> arc_ = std::vector<ItemId>(n_, 0);
  std::vector<std::uint32_t> out_left_;
  std::uint32_t chosen_ = 0;
  bool merging_ = false;
  std::vector<char> is_root_;
  DisjointSets dsu_;
  std::uint64_t components_ = 0, roots_ = 0;
  double f_cost_ = 0;
  bool net_ = false, net_used_ = false;
  std::vector<Vertex> roots_list_;
  Vertex current_ = kNone;
  std::optional<RhoTable> joint_;
};

class ArborescenceStrategy final : public Strategy {
 public:
  ArborescenceStrategy(const StrategyInfo& info, std::uint32_t n, double eps, double merge)
      : Strategy(info, ItemUniverse::make(UniverseKind::directed_arcs, n)), eps_(eps), merge_(merge),
        table_(1, n - 1) {}

  StrategyOutcome run(Session& session, RngHandle) const override {
    ArborescencePlan plan(universe(), eps_, merge_, table_);
    auto guard = make_guard("arborescence", session);
    return drive(session, plan, *guard, "arborescence");
  }

 private:
  double eps_, merge_;
  RhoTable table_;
};

}  // namespace

std::unique_ptr<Strategy> make_spanning_tree(const StrategyInfo& info, std::uint32_t n, const Params& p) {
  const double alpha = p.number("alpha", 0.69), beta = p.number("beta", 3.5);
  if (!(alpha > 0 && alpha < 1) || !(beta > 0)) throw std::invalid_argument("need 0 < alpha < 1 and beta > 0");
  if (alpha * beta <= 1) throw std::invalid_argument("need alpha * beta > 1");
  return std::make_unique<SpanningTreeStrategy>(info, n, alpha, beta);
}

std::unique_ptr<Strategy> make_arborescence(const StrategyInfo& info, std::uint32_t n, const Params& p) {
  if (n < 3) throw std::invalid_argument("arborescence needs n >= 3");
  const double nn = n;
  const double eps = p.number("eps", 1 / std::log(nn));
  const double merge = p.number("merge_threshold", std::pow(nn, -0.75));
  if (!(eps > 0 && eps < 1)) throw std::invalid_argument("eps must lie in (0, 1)");
  if (!(merge > 0)) throw std::invalid_argument("merge_threshold must be positive");
  return std::make_unique<ArborescenceStrategy>(info, n, eps, merge);
}

}  // namespace onbuy

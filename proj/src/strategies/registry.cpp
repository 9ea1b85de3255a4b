#include <algorithm>
#include <stdexcept>

#include "onbuy/numeric.hpp"
#include "onbuy/strategies.hpp"
#include "onbuy/validate.hpp"

namespace onbuy {

const std::vector<StrategyInfo>& strategy_catalog() {
  using K = UniverseKind;
  static const std::vector<StrategyInfo> catalog = {
      {"k-purchase", K::abstract_items, false, "", {"k"}},
      {"shortest-path", K::undirected_edges, true, "endpoints-last", {"alpha", "layers", "eps", "p"}},
      {"paths-len2", K::undirected_edges, true, "", {"ell", "k", "red_threshold", "blue_threshold"}},
      {"triangle", K::undirected_edges, true, "vertex-sweep", {"ell"}},
      {"clique", K::undirected_edges, true, "", {"r"}},
      {"spanning-tree", K::undirected_edges, true, "", {"alpha", "beta"}},
      {"arborescence", K::directed_arcs, true, "", {"eps", "merge_threshold"}},
      {"bipartite-pm", K::bipartite_edges, false, "", {}},
      {"pm-complete", K::undirected_edges, false, "", {}},
      {"hamilton", K::undirected_edges, false, "", {"m", "budget"}},
      {"hamilton-directed", K::directed_arcs, false, "", {"m", "budget"}},
  };
  return catalog;
}

const StrategyInfo& strategy_info(const std::string& name) {
  for (const auto& info : strategy_catalog()) {
    if (info.name == name) return info;
  }
  throw std::invalid_argument("unknown strategy '" + name + "'");
}

void check_order(const StrategyInfo& info, const OrderModel& order) {
  if (order.variant != OrderModel::Variant::aom || !info.rom_only) return;
  if (!info.designated_adversary.empty() && order.adversary == info.designated_adversary) return;
  throw std::invalid_argument(info.name + " is designed for random order and does not run under " +
                              order.name());
}

Params::Params(const ParamMap& map, const StrategyInfo& info) : map_(map) {
  for (const auto& [key, value] : map) {
    if (std::find(info.params.begin(), info.params.end(), key) == info.params.end()) {
      throw std::invalid_argument("unknown parameter '" + key + "' for " + info.name);
    }
  }
}

double Params::number(const std::string& key, double fallback) const {
  const auto it = map_.find(key);
  if (it == map_.end()) return fallback;
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(it->second, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != it->second.size()) {
    throw std::invalid_argument("parameter '" + key + "' is not a number: " + it->second);
  }
  return v;
}

std::int64_t Params::integer(const std::string& key, std::int64_t fallback) const {
  if (!has(key)) return fallback;
  const double v = number(key, 0);
  if (v != static_cast<double>(static_cast<std::int64_t>(v))) {
    throw std::invalid_argument("parameter '" + key + "' must be an integer");
  }
  return static_cast<std::int64_t>(v);
}

namespace {

std::uint32_t arborescence_root(const std::vector<Endpoints>& arcs, std::uint32_t n) {
  std::vector<char> has_out(n, 0);
  for (const auto& a : arcs) {
    if (a.u < n) has_out[a.u] = 1;
  }
  const auto it = std::find(has_out.begin(), has_out.end(), 0);
  return static_cast<std::uint32_t>(it - has_out.begin());
}

}  // namespace

StrategyOutcome drive(Session& session, Plan& plan, Guard& guard, const std::string& structure,
                      std::uint32_t param) {
  StrategyOutcome out;
  KahanSum total;
  const bool reachable = guard.initialize();
  bool greedy = false;
  while (reachable) {
    if (greedy ? guard.witness_complete() : plan.complete()) break;
    if (!greedy && plan.stuck()) {
      greedy = out.fallback_used = true;
      continue;
    }
    const auto ev = session.next();
    if (!ev) break;
    bool take;
    if (greedy) {
      take = guard.in_witness(ev->item);
    } else {
      take = plan.decide(*ev);
      if (!take && guard.must_take(ev->item)) take = greedy = out.fallback_used = true;
    }
    session.record(take);
    if (take) {
      out.purchased.push_back({ev->item, ev->cost});
      total.add(ev->cost);
      guard.purchased(ev->item);
    }
    if (!greedy) plan.commit(*ev, take);
  }
  if (!greedy && plan.complete()) {
    out.structure = plan.structure();
  } else if (reachable && guard.witness_complete()) {
    // Also covers a plan that ran out of stream with the witness bought.
    out.fallback_used = true;
    out.structure = guard.structure();
  }
  out.total_cost = total.value();
  out.inspections = session.position();
  out.stats["guard_repairs"] = static_cast<double>(guard.repairs());
  plan.annotate(out);

  const ItemUniverse& u = session.universe();
  std::vector<Endpoints> edges;
  bool owned = !out.structure.empty();
  for (ItemId id : out.structure) {
    owned = owned && session.accepted(id);
    edges.push_back(u.endpoints(id));
  }
  if (structure == "arborescence") param = arborescence_root(edges, u.vertices());
  out.success = owned && validate(structure, edges, u.vertices(), param);
  return out;
}

namespace {

class KPurchaseStrategy final : public Strategy {
 public:
  KPurchaseStrategy(const StrategyInfo& info, std::uint64_t n, int k)
      : Strategy(info, ItemUniverse::make(UniverseKind::abstract_items, n)), k_(k), table_(k, n) {}

  StrategyOutcome run(Session& session, RngHandle) const override {
    StrategyOutcome out = run_k_purchase(session, k_, table_);
    for (const auto& p : out.purchased) out.structure.push_back(p.item);
    out.success = out.purchased.size() == static_cast<std::size_t>(k_);
    return out;
  }

 private:
  int k_;
  RhoTable table_;
};

}  // namespace

std::unique_ptr<Strategy> make_k_purchase(const StrategyInfo& info, std::uint64_t n, const Params& p) {
  const auto k = p.integer("k", 1);
  if (k < 1 || static_cast<std::uint64_t>(k) > n) throw std::invalid_argument("k-purchase needs 1 <= k <= N");
  return std::make_unique<KPurchaseStrategy>(info, n, static_cast<int>(k));
}

std::unique_ptr<Strategy> make_strategy(const std::string& name, std::uint64_t n, const ParamMap& params) {
  const StrategyInfo& info = strategy_info(name);
  const Params p(params, info);
  if (name == "k-purchase") return make_k_purchase(info, n, p);
  if (n > 0xffffffffu) throw std::invalid_argument("n too large");
  const auto nv = static_cast<std::uint32_t>(n);
  if (name == "shortest-path") return make_shortest_path(info, nv, p);
  if (name == "paths-len2" || name == "triangle" || name == "clique") return make_wedge_family(info, nv, p);
  if (name == "spanning-tree") return make_spanning_tree(info, nv, p);
  if (name == "arborescence") return make_arborescence(info, nv, p);
  if (name == "bipartite-pm" || name == "pm-complete") return make_matching(info, nv, p);
  return make_hamilton(info, nv, p);
}

}  // namespace onbuy

#include "onbuy/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <sstream>

#include "onbuy/adversary.hpp"
#include "onbuy/avg2.hpp"
#include "onbuy/decompose.hpp"
#include "onbuy/functional.hpp"
#include "onbuy/hamilton.hpp"
#include "onbuy/harness.hpp"
#include "onbuy/matching.hpp"
#include "onbuy/rho.hpp"
#include "onbuy/session.hpp"
#include "onbuy/strategies.hpp"

namespace onbuy {

namespace {

// A check returns an empty string on success, otherwise what went wrong.
using Check = std::function<std::string()>;

std::string where(const char* what, int k, std::uint64_t m, double value) {
  std::ostringstream s;
  s << what << " at k=" << k << " N=" << m << " (rho=" << format_number(value) << ")";
  return s.str();
}

std::string rho_monotonicity(bool corrupt) {
  RhoTable t(8, 2000);
  if (corrupt) t.poke(3, 700, 2 * t(3, 699));
  if (t(1, 1) != 0.5) return "rho(1,1) != 1/2";
  for (int k = 1; k <= t.k_max(); ++k) {
    for (std::uint64_t m = static_cast<std::uint64_t>(k) + 1; m <= t.n_max(); ++m) {
      if (t(k, m) > t(k, m - 1)) return where("increase in N", k, m, t(k, m));
      if (k > 1 && t(k, m) < t(k - 1, m)) return where("decrease in k", k, m, t(k, m));
    }
  }
  return "";
}

std::string rho_sandwich() {
  const CkSequence c = compute_ck(6);
  RhoTable t(6, 3000);
  for (std::uint64_t m = 33; m <= t.n_max(); ++m) {
    const double r = t(1, m), nm = static_cast<double>(m);
    if (r < 2 * (1 - 10 / nm) / nm || r > 2 / (nm + 1)) return where("1-purchase sandwich", 1, m, r);
  }
  for (int k = 2; k <= 6; ++k) {
    for (std::uint64_t m = static_cast<std::uint64_t>(k) + 1; m <= t.n_max(); ++m) {
      const double r = t(k, m), nm = static_cast<double>(m), top = c.ck(k) / nm;
      if (r > top || r < (1 - 1 / std::sqrt(nm)) * top) return where("k-purchase sandwich", k, m, r);
    }
  }
  return "";
}

std::string ck_bounds() {
  const CkSequence c = compute_ck(1000);
  if (c.ck(1) != 2.0) return "c_1 != 2";
  for (int k = 1; k <= 1000; ++k) {
    const double kk = k, ck = c.ck(k);
    if (ck < kk * kk / 2 || ck > 2 * kk * kk) return "c_k outside [k^2/2, 2k^2] at k=" + std::to_string(k);
    // d_k - d_{k-1} <= 1 + 1/(2(d_{k-1} + 1)) sums to at most (ln k)/2 past d_1.
    if (!(c.dk(k) > kk && c.dk(k) <= kk + (std::sqrt(5.0) - 1) + std::log(kk) / 2)) {
      return "sqrt(1+2c_k) out of range at k=" + std::to_string(k);
    }
  }
  if (std::abs(clique_exponent(3) - 4.0 / 7) > 1e-15 || std::abs(clique_exponent(4) - 2.0 / 9) > 1e-15 ||
      std::abs(clique_exponent(5) - 0.1) > 1e-15) {
    return "clique exponents";
  }
  return "";
}

std::string decompose_minimum() {
  Rng rng(RngHandle{17, 1});
  for (int i = 0; i < 20000; ++i) {
    const double x = rng.uniform();
    const int m = 1 + static_cast<int>(rng.below(12));
    const auto z = decompose_min_of_m(x, m, rng);
    if (*std::min_element(z.begin(), z.end()) != x) return "minimum differs from the input";
    if (std::any_of(z.begin(), z.end(), [](double v) { return !(v >= 0 && v <= 1); })) return "value outside [0, 1]";
  }
  return "";
}

std::string session_determinism() {
  const auto u = ItemUniverse::make(UniverseKind::undirected_edges, 40);
  for (const std::string order : {"rom", "pom", "aom:vertex-sweep", "aom:endpoints-last"}) {
    const auto model = OrderModel::parse(order);
    auto a = make_session(u, model, RngHandle{5, 9});
    auto b = make_session(u, model, RngHandle{5, 9});
    std::vector<char> seen(u.size(), 0);
    std::uint64_t count = 0;
    for (;;) {
      const auto x = a->next(), y = b->next();
      if (x.has_value() != y.has_value()) return order + ": streams differ in length";
      if (!x) break;
      if (x->item != y->item || x->cost != y->cost) return order + ": streams differ";
      if (seen[x->item]++) return order + ": item inspected twice";
      ++count;
      const bool take = x->cost < 0.05;
      a->record(take);
      b->record(take);
    }
    if (count != u.size()) return order + ": not every item inspected";
  }
  return "";
}

std::string matching_maximal() {
  Rng rng(RngHandle{23, 0});
  for (int round = 0; round < 50; ++round) {
    const std::uint32_t n = 30;
    BipartiteAdjacency adj(n);
    for (auto& row : adj) {
      for (Vertex v = 0; v < n; ++v) {
        if (rng.uniform() < 0.06) row.push_back(v);
      }
    }
    const Matching m = max_bipartite_matching(adj, n);
    std::vector<char> used(n, 0);
    std::uint32_t size = 0;
    for (Vertex u = 0; u < n; ++u) {
      const auto v = m.mate_u[u];
      if (v == kUnmatched) continue;
      if (used[v]++ || m.mate_v[v] != u) return "not a matching";
      if (std::find(adj[u].begin(), adj[u].end(), v) == adj[u].end()) return "matched a non-edge";
      ++size;
    }
    if (size != m.size) return "size mismatch";
    if (has_augmenting_path(adj, m)) return "augmenting path remains";
  }
  return "";
}

std::string functional_counts() {
  Rng rng(RngHandle{29, 0});
  for (int round = 0; round < 100; ++round) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(200));
    std::vector<Vertex> f(n);
    for (Vertex v = 0; v < n; ++v) {
      do f[v] = static_cast<Vertex>(rng.below(n));
      while (f[v] == v);
    }
    const auto g = decompose_functional(f);
    std::uint32_t on = 0;
    for (const auto& c : g.cycles) on += static_cast<std::uint32_t>(c.size());
    if (on + g.tree_vertices != n) return "cycle and tree vertices do not add up";
  }
  return "";
}

std::string hamilton_output() {
  Rng rng(RngHandle{31, 0});
  const std::uint32_t n = 150;
  Adjacency adj(n);
  for (Vertex v = 0; v < n; ++v) {
    for (int j = 0; j < 10; ++j) {
      Vertex w;
      do w = static_cast<Vertex>(rng.below(n));
      while (w == v);
      adj[v].push_back(w);
      adj[w].push_back(v);
    }
  }
  for (auto& row : adj) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  const auto r = find_hamilton_cycle(adj);
  if (r.status != HamiltonStatus::found) return "no tour in a 10-out graph";
  if (r.cycle.size() != n) return "tour has the wrong length";
  std::vector<char> seen(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex a = r.cycle[i], b = r.cycle[(i + 1) % n];
    if (seen[a]++) return "vertex visited twice";
    if (!std::binary_search(adj[a].begin(), adj[a].end(), b)) return "tour uses a non-edge";
  }
  return "";
}

std::uint64_t small_size(const std::string& s) {
  if (s == "k-purchase") return 60;
  if (s == "hamilton-directed") return 30;
  if (s == "hamilton") return 50;
  if (s == "bipartite-pm" || s == "pm-complete") return 60;
  if (s == "paths-len2") return 400;
  return 150;
}

std::string strategy_validity() {
  for (const auto& info : strategy_catalog()) {
    std::vector<std::string> orders{"rom", "pom"};
    if (!info.rom_only) {
      const auto universe = make_strategy(info.name, small_size(info.name), {})->universe();
      for (const auto& a : adversary_names()) {
        try {
          make_adversary(a, universe);
          orders.push_back("aom:" + a);
        } catch (const std::invalid_argument&) {
        }
      }
    } else if (!info.designated_adversary.empty()) {
      orders.push_back("aom:" + info.designated_adversary);
    }
    for (const auto& order : orders) {
      TrialConfig c{info.name, small_size(info.name), OrderModel::parse(order), 3, 11, {}};
      if (info.name == "k-purchase") c.params["k"] = "3";
      for (const auto& r : run_trial_records(c, 1)) {
        if (!r.success) return info.name + " failed under " + order;
      }
    }
  }
  return "";
}

std::string rom_only_rejected() {
  for (const auto& info : strategy_catalog()) {
    if (!info.rom_only) continue;
    try {
      check_order(info, OrderModel::parse("aom"));
      return info.name + " accepted an arbitrary adversary";
    } catch (const std::invalid_argument&) {
    }
  }
  return "";
}

std::string parallel_equivalence() {
  const TrialConfig c{"triangle", 200, OrderModel::parse("rom"), 8, 3, {}};
  const auto a = run_trials(c, 1), b = run_trials(c, 4);
  if (a.mean != b.mean || a.median != b.median || a.std_error != b.std_error) return "summaries differ";
  return "";
}

std::string avg2_residual() {
  const auto p = optimize_avg2(100);
  if (!(p.residual <= 1e-9)) return "residual " + format_number(p.residual);
  if (!(p.objective >= 2.499)) return "objective " + format_number(p.objective);
  return "";
}

}  // namespace

std::vector<InvariantResult> run_selftest(const SelfTestOptions& options) {
  const std::vector<std::pair<std::string, Check>> checks{
      {"rho monotonicity", [&] { return rho_monotonicity(options.corrupt_rho); }},
      {"rho finite-N sandwich", rho_sandwich},
      {"c_k bounds and clique exponents", ck_bounds},
      {"decomposition keeps the minimum", decompose_minimum},
      {"session determinism and coverage", session_determinism},
      {"matching is maximum", matching_maximal},
      {"functional graph vertex count", functional_counts},
      {"hamilton tour validity", hamilton_output},
      {"strategies succeed under every allowed order", strategy_validity},
      {"rom-only strategies reject aom", rom_only_rejected},
      {"parallel equivalence", parallel_equivalence},
      {"average-two program feasibility", avg2_residual},
  };
  std::vector<InvariantResult> out;
  for (const auto& [name, check] : checks) {
    InvariantResult r{name, false, ""};
    try {
      r.detail = check();
      r.passed = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace onbuy

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "onbuy/guard.hpp"
#include "onbuy/outcome.hpp"
#include "onbuy/rho.hpp"
#include "onbuy/session.hpp"

namespace onbuy {

// Flat key/value overrides, e.g. {"alpha", "0.33"}. Unknown keys are an
// error.
using ParamMap = std::map<std::string, std::string>;

struct StrategyInfo {
  std::string name;
  UniverseKind universe;
  // ROM-designed strategies run under ROM and POM; under AOM only against
  // the named adversary (empty: not at all).
  bool rom_only = false;
  std::string designated_adversary;
  std::vector<std::string> params;
};

const std::vector<StrategyInfo>& strategy_catalog();
const StrategyInfo& strategy_info(const std::string& name);
// Throws std::invalid_argument when the order model does not suit the
// strategy.
void check_order(const StrategyInfo& info, const OrderModel& order);

// One run's decision logic. decide() proposes; the driver may overrule a
// rejection through the guard, then reports the final decision to commit().
class Plan {
 public:
  virtual ~Plan() = default;
  virtual bool decide(const InspectionEvent& ev) = 0;
  virtual void commit(const InspectionEvent& ev, bool bought) = 0;
  virtual bool complete() const = 0;
  // No way left to finish by the plan's own rules.
  virtual bool stuck() const { return false; }
  virtual std::vector<ItemId> structure() const = 0;
  virtual void annotate(StrategyOutcome& out) const { (void)out; }
};

// Runs a plan to completion. When the guard forces a purchase, or the plan
// is stuck, the rest of the run buys the guard's witness and nothing else.
// `param` is passed to the validator (clique size, wedge count).
StrategyOutcome drive(Session& session, Plan& plan, Guard& guard, const std::string& structure,
                      std::uint32_t param = 0);

// A configured strategy. Tables and other per-configuration data are built
// once and shared read-only by every run.
class Strategy {
 public:
  virtual ~Strategy() = default;
  const StrategyInfo& info() const { return *info_; }
  const ItemUniverse& universe() const { return universe_; }
  std::uint32_t n() const { return universe_.vertices(); }
  virtual StrategyOutcome run(Session& session, RngHandle purchaser) const = 0;

 protected:
  Strategy(const StrategyInfo& info, ItemUniverse universe) : info_(&info), universe_(std::move(universe)) {}

 private:
  const StrategyInfo* info_;
  ItemUniverse universe_;
};

// n is the vertex count (the item count N for k-purchase).
std::unique_ptr<Strategy> make_strategy(const std::string& name, std::uint64_t n, const ParamMap& params);

// Parameter helpers shared by the factories.
class Params {
 public:
  Params(const ParamMap& map, const StrategyInfo& info);
  bool has(const std::string& key) const { return map_.count(key) != 0; }
  double number(const std::string& key, double fallback) const;
  std::int64_t integer(const std::string& key, std::int64_t fallback) const;

 private:
  const ParamMap& map_;
};

// Factories, one per family.
std::unique_ptr<Strategy> make_k_purchase(const StrategyInfo& info, std::uint64_t n, const Params& p);
std::unique_ptr<Strategy> make_shortest_path(const StrategyInfo& info, std::uint32_t n, const Params& p);
std::unique_ptr<Strategy> make_wedge_family(const StrategyInfo& info, std::uint32_t n, const Params& p);
std::unique_ptr<Strategy> make_spanning_tree(const StrategyInfo& info, std::uint32_t n, const Params& p);
std::unique_ptr<Strategy> make_arborescence(const StrategyInfo& info, std::uint32_t n, const Params& p);
std::unique_ptr<Strategy> make_matching(const StrategyInfo& info, std::uint32_t n, const Params& p);
std::unique_ptr<Strategy> make_hamilton(const StrategyInfo& info, std::uint32_t n, const Params& p);

// Shortest-path sizing, exposed for tests: layer count, edge threshold p
// and per-layer caps.
struct PathDesign {
  int layers = 2;
  double p = 0.0;
  double eps = 0.0;
  std::vector<std::uint64_t> caps;  // caps[l-1]
};
PathDesign design_shortest_path(std::uint32_t n, const Params& p);

// Spanning-tree cost estimate: the constant the tree strategy attains as
// n grows, as a function of its two parameters.
double evaluate_buytree_cost(double alpha, double beta);

}  // namespace onbuy

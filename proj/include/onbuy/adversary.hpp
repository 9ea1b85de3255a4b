#pragma once

#include <memory>
#include <string>
#include <vector>

#include "onbuy/session.hpp"

namespace onbuy {

// An adversary sees which items were presented and what the purchaser did
// with them, never a cost.
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual ItemId next(const Session& view) = 0;
  virtual void observe(ItemId item, bool accepted) { (void)item, (void)accepted; }
};

// Registered names: identity, endpoints-last, vertex-sweep.
std::unique_ptr<Adversary> make_adversary(const std::string& name, const ItemUniverse& universe);
std::vector<std::string> adversary_names();

}  // namespace onbuy

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "onbuy/session.hpp"

namespace onbuy {

// Keeps one copy of the target (the witness) inside the items that are
// still obtainable: purchased or uninspected. When the strategy wants to
// reject a witness item, the guard looks for a replacement witness; if
// there is none, rejecting would make the target unreachable and the item
// must be bought.
class Guard {
 public:
  explicit Guard(const Session& session);
  virtual ~Guard() = default;

  // Finds an initial witness. False when the target is already unreachable.
  bool initialize();
  // `item` is the pending event the strategy is about to reject.
  bool must_take(ItemId item);
  bool in_witness(ItemId item) const { return (member_[item >> 6] >> (item & 63)) & 1u; }
  void purchased(ItemId item);
  bool witness_complete() const { return bought_ == size_; }
  virtual std::vector<ItemId> witness() const;
  // The witness in the shape the validator expects (differs for wedges).
  virtual std::vector<ItemId> structure() const { return witness(); }
  std::uint64_t repairs() const { return repairs_; }

 protected:
  bool available(ItemId item) const { return !session_.inspected(item) || session_.accepted(item); }
  bool bought(ItemId item) const { return session_.accepted(item); }
  // Rebuilds the witness around a removed item (or from scratch when
  // removed is absent). Implementations call set_witness on success.
  virtual bool repair(const ItemId* removed) = 0;
  // Optional: pull a purchased item into the witness so that a greedy
  // completion reuses what the strategy already owns.
  virtual void absorb(ItemId item) { (void)item; }
  // Guards that keep their own shape use add/remove and override witness().
  void set_witness(std::vector<ItemId> items);
  void add_item(ItemId item);
  void remove_item(ItemId item);

  const Session& session_;
  const ItemUniverse& u_;

 private:
  std::vector<std::uint64_t> member_;
  std::vector<ItemId> list_;
  std::size_t size_ = 0;
  std::size_t bought_ = 0;
  std::uint64_t repairs_ = 0;
};

// Structures: shortest-path, triangle, clique (param r), paths-len2
// (param ell), spanning-tree, arborescence, bipartite-pm, pm-complete,
// hamilton, hamilton-directed.
std::unique_ptr<Guard> make_guard(const std::string& structure, const Session& session,
                                  std::uint32_t param = 0);

// Stateless form: true iff rejecting the pending item `current` leaves no
// copy of the target among purchased and uninspected items. Exact except
// for hamilton (budgeted search) and paths-len2 (greedy witness).
bool must_take_guard(const Session& session, ItemId current, const std::string& structure,
                     std::uint32_t param = 0);

}  // namespace onbuy

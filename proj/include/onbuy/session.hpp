#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "onbuy/rng.hpp"
#include "onbuy/universe.hpp"

namespace onbuy {

struct InspectionEvent {
  ItemId item = 0;
  double cost = 0.0;
  std::uint64_t position = 0;  // 1-based
};

struct ProtocolViolation : std::logic_error {
  using std::logic_error::logic_error;
};

// "pom", "rom" or "aom:<adversary>"; a bare "aom" names the identity
// adversary.
struct OrderModel {
  enum class Variant { pom, rom, aom };
  Variant variant = Variant::rom;
  std::string adversary;

  std::string name() const;
  static OrderModel parse(const std::string& text);
  friend bool operator==(const OrderModel&, const OrderModel&) = default;
};

class Adversary;

// Common surface of the three order models. A strategy calls next() to
// receive the following event and record() with its decision. Costs are
// drawn at inspection time, so a strategy that stops early pays only for
// the events it saw.
class Session {
 public:
  virtual ~Session() = default;

  const ItemUniverse& universe() const { return *universe_; }
  std::uint64_t size() const { return universe_->size(); }
  std::uint64_t position() const { return position_; }
  std::uint64_t remaining() const { return size() - position_; }
  bool inspected(ItemId item) const { return test(inspected_, item); }
  bool accepted(ItemId item) const { return test(accepted_, item); }

  virtual std::optional<InspectionEvent> next() = 0;
  // Decision on the most recent event. Sessions other than AOM only keep
  // it for bookkeeping.
  void record(bool accepted);

 protected:
  Session(const ItemUniverse& universe, RngHandle costs);
  InspectionEvent inspect_item(ItemId item);
  virtual void on_decision(ItemId item, bool accepted) { (void)item, (void)accepted; }
  // Uniform over uninspected items. Rejection sampling against the bitset
  // while most items are fresh, then a compacted Fisher-Yates pool.
  ItemId draw_uninspected(Rng& rng);

  static bool test(const std::vector<std::uint64_t>& bits, ItemId i) {
    return (bits[i >> 6] >> (i & 63)) & 1u;
  }

  const ItemUniverse* universe_;
  Rng cost_rng_;
  std::uint64_t position_ = 0;
  std::vector<std::uint64_t> inspected_, accepted_;
  std::optional<ItemId> pending_;

 private:
  std::vector<ItemId> pool_;
  bool pooled_ = false;
};

// Uniformly random order, produced by a lazy Fisher-Yates shuffle.
class RomSession final : public Session {
 public:
  RomSession(const ItemUniverse& universe, RngHandle rng);
  std::optional<InspectionEvent> next() override;

 private:
  Rng order_rng_;
};

// The purchaser names each item. next() lets a strategy that has no
// preference self-randomize, which reproduces the ROM law.
class PomSession final : public Session {
 public:
  PomSession(const ItemUniverse& universe, RngHandle rng);
  InspectionEvent inspect(ItemId item);
  std::optional<InspectionEvent> next() override;

 private:
  Rng order_rng_;
};

class AomSession final : public Session {
 public:
  AomSession(const ItemUniverse& universe, std::unique_ptr<Adversary> adversary, RngHandle rng);
  ~AomSession() override;
  std::optional<InspectionEvent> next() override;

 private:
  void on_decision(ItemId item, bool accepted) override;
  std::unique_ptr<Adversary> adversary_;
};

std::unique_ptr<Session> make_session(const ItemUniverse& universe, const OrderModel& order,
                                      RngHandle rng);

}  // namespace onbuy

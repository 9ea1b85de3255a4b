#include "onbuy/session.hpp"

#include "onbuy/adversary.hpp"

namespace onbuy {

std::string OrderModel::name() const {
  switch (variant) {
    case Variant::pom: return "pom";
    case Variant::rom: return "rom";
    case Variant::aom: return "aom:" + adversary;
  }
  return "?";
}

OrderModel OrderModel::parse(const std::string& text) {
  if (text == "rom") return {Variant::rom, {}};
  if (text == "pom") return {Variant::pom, {}};
  if (text == "aom") return {Variant::aom, "identity"};
  if (text.rfind("aom:", 0) == 0 && text.size() > 4) return {Variant::aom, text.substr(4)};
  throw std::invalid_argument("unknown order model '" + text + "'");
}

Session::Session(const ItemUniverse& universe, RngHandle costs)
    : universe_(&universe),
      cost_rng_(costs),
      inspected_((universe.size() + 63) / 64, 0),
      accepted_(inspected_.size(), 0) {}

void Session::record(bool accepted) {
  if (!pending_) throw ProtocolViolation("record() without a pending event");
  const ItemId item = *pending_;
  if (accepted) accepted_[item >> 6] |= std::uint64_t{1} << (item & 63);
  pending_.reset();
  on_decision(item, accepted);
}

InspectionEvent Session::inspect_item(ItemId item) {
  if (item >= size()) throw ProtocolViolation("item id out of range");
  if (inspected(item)) {
    throw ProtocolViolation("item " + std::to_string(item) + " already inspected");
  }
  inspected_[item >> 6] |= std::uint64_t{1} << (item & 63);
  pending_ = item;
  ++position_;
  return {item, cost_rng_.uniform(), position_};
}

ItemId Session::draw_uninspected(Rng& rng) {
  const std::uint64_t n = size();
  if (!pooled_ && remaining() * 8 > n) {
    for (;;) {
      const auto id = static_cast<ItemId>(rng.below(n));
      if (!inspected(id)) return id;
    }
  }
  if (!pooled_) {
    pooled_ = true;
    pool_.reserve(remaining());
    for (std::uint64_t i = 0; i < n; ++i) {
      if (!inspected(static_cast<ItemId>(i))) pool_.push_back(static_cast<ItemId>(i));
    }
  }
  // Items named directly through a POM session may still sit in the pool;
  // they are discarded when drawn.
  for (;;) {
    const std::uint64_t j = rng.below(pool_.size());
    const ItemId id = pool_[j];
    pool_[j] = pool_.back();
    pool_.pop_back();
    if (!inspected(id)) return id;
  }
}

RomSession::RomSession(const ItemUniverse& universe, RngHandle rng)
    : Session(universe, rng.fork(1)), order_rng_(rng.fork(2)) {}

std::optional<InspectionEvent> RomSession::next() {
  pending_.reset();
  if (remaining() == 0) return std::nullopt;
  return inspect_item(draw_uninspected(order_rng_));
}

PomSession::PomSession(const ItemUniverse& universe, RngHandle rng)
    : Session(universe, rng.fork(1)), order_rng_(rng.fork(2)) {}

InspectionEvent PomSession::inspect(ItemId item) {
  pending_.reset();
  return inspect_item(item);
}

std::optional<InspectionEvent> PomSession::next() {
  pending_.reset();
  if (remaining() == 0) return std::nullopt;
  return inspect_item(draw_uninspected(order_rng_));
}

AomSession::AomSession(const ItemUniverse& universe, std::unique_ptr<Adversary> adversary,
                       RngHandle rng)
    : Session(universe, rng.fork(1)), adversary_(std::move(adversary)) {}

AomSession::~AomSession() = default;

void AomSession::on_decision(ItemId item, bool accepted) { adversary_->observe(item, accepted); }

std::optional<InspectionEvent> AomSession::next() {
  if (pending_) {
    // An unrecorded event counts as a rejection.
    adversary_->observe(*pending_, false);
    pending_.reset();
  }
  if (remaining() == 0) return std::nullopt;
  return inspect_item(adversary_->next(*this));
}

std::unique_ptr<Session> make_session(const ItemUniverse& universe, const OrderModel& order,
                                      RngHandle rng) {
  switch (order.variant) {
    case OrderModel::Variant::rom: return std::make_unique<RomSession>(universe, rng);
    case OrderModel::Variant::pom: return std::make_unique<PomSession>(universe, rng);
    case OrderModel::Variant::aom:
      return std::make_unique<AomSession>(universe, make_adversary(order.adversary, universe), rng);
  }
  throw std::invalid_argument("unknown order model");
}

}  // namespace onbuy

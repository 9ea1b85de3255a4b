#include "onbuy/adversary.hpp"

#include <stdexcept>

namespace onbuy {

namespace {

class IdentityAdversary final : public Adversary {
 public:
  ItemId next(const Session& view) override {
    while (view.inspected(cursor_)) ++cursor_;
    return cursor_;
  }

 private:
  ItemId cursor_ = 0;
};

// Edges inside [1, n-2] first, then everything touching 0 or n-1.
class EndpointsLastAdversary final : public Adversary {
 public:
  explicit EndpointsLastAdversary(const ItemUniverse& u) : u_(u) {}

  ItemId next(const Session& view) override {
    for (;;) {
      if (cursor_ == u_.size()) {
        cursor_ = 0;
        ++phase_;
        if (phase_ > 1) throw ProtocolViolation("endpoints-last adversary exhausted");
      }
      const ItemId id = static_cast<ItemId>(cursor_++);
      if (view.inspected(id)) continue;
      if (touches_end(id) == (phase_ == 1)) return id;
    }
  }

 private:
  bool touches_end(ItemId id) const {
    const Endpoints e = u_.endpoints(id);
    const Vertex last = u_.vertices() - 1;
    return e.u == 0 || e.v == 0 || e.u == last || e.v == last;
  }

  const ItemUniverse& u_;
  std::uint64_t cursor_ = 0;
  int phase_ = 0;
};

// For v = 0, 1, ...: all unseen edges at v, then all unseen edges inside the
// set of neighbours the purchaser accepted during v's star.
class VertexSweepAdversary final : public Adversary {
 public:
  explicit VertexSweepAdversary(const ItemUniverse& u) : u_(u) {}

  ItemId next(const Session& view) override {
    const Vertex n = u_.vertices();
    for (;;) {
      if (v_ >= n) throw ProtocolViolation("vertex-sweep adversary exhausted");
      if (in_star_) {
        while (w_ < n) {
          const Vertex w = w_++;
          if (w == v_) continue;
          const ItemId id = u_.id(v_, w);
          if (!view.inspected(id)) {
            star_item_ = id;
            star_other_ = w;
            return id;
          }
        }
        in_star_ = false;
        i_ = 0;
        j_ = 1;
      }
      while (i_ + 1 < nbrs_.size()) {
        if (j_ >= nbrs_.size()) {
          ++i_;
          j_ = i_ + 1;
          continue;
        }
        const ItemId id = u_.id(nbrs_[i_], nbrs_[j_++]);
        if (!view.inspected(id)) return id;
      }
      ++v_;
      w_ = 0;
      in_star_ = true;
      nbrs_.clear();
    }
  }

  void observe(ItemId item, bool accepted) override {
    if (accepted && in_star_ && item == star_item_) nbrs_.push_back(star_other_);
  }

 private:
  const ItemUniverse& u_;
  Vertex v_ = 0;
  Vertex w_ = 0;
  bool in_star_ = true;
  ItemId star_item_ = 0;
  Vertex star_other_ = 0;
  std::vector<Vertex> nbrs_;
  std::size_t i_ = 0;
  std::size_t j_ = 1;
};

}  // namespace

std::vector<std::string> adversary_names() { return {"identity", "endpoints-last", "vertex-sweep"}; }

std::unique_ptr<Adversary> make_adversary(const std::string& name, const ItemUniverse& universe) {
  if (name == "identity") return std::make_unique<IdentityAdversary>();
  if (name == "endpoints-last" || name == "vertex-sweep") {
    if (universe.kind() != UniverseKind::undirected_edges) {
      throw std::invalid_argument("adversary '" + name + "' needs an undirected-edges universe");
    }
    if (name == "endpoints-last") return std::make_unique<EndpointsLastAdversary>(universe);
    return std::make_unique<VertexSweepAdversary>(universe);
  }
  throw std::invalid_argument("unknown adversary '" + name + "'");
}

}  // namespace onbuy

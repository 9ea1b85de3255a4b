#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace onbuy {

using ItemId = std::uint32_t;
using Vertex = std::uint32_t;

enum class UniverseKind { abstract_items, undirected_edges, directed_arcs, bipartite_edges };

std::string_view to_string(UniverseKind kind);

struct Endpoints {
  Vertex u = 0;
  Vertex v = 0;
  friend bool operator==(const Endpoints&, const Endpoints&) = default;
};

// The set of purchasable items and the bijection between item ids and
// edges. Undirected edges are stored with u < v; arcs as (tail, head);
// bipartite edges as (u in U, v in V), both sides indexed from 0.
class ItemUniverse {
 public:
  // `size` is the vertex count n for graph kinds and the item count N for
  // abstract items. Throws std::invalid_argument below the minimum.
  static ItemUniverse make(UniverseKind kind, std::uint64_t size);

  UniverseKind kind() const { return kind_; }
  std::uint32_t vertices() const { return n_; }
  std::uint64_t size() const { return items_; }
  bool graphical() const { return kind_ != UniverseKind::abstract_items; }

  ItemId id(Vertex u, Vertex v) const;
  Endpoints endpoints(ItemId item) const;

  // Number of items incident to v (out-arcs for directed universes).
  std::uint32_t degree() const;

 private:
  ItemUniverse(UniverseKind kind, std::uint32_t n, std::uint64_t items);

  UniverseKind kind_;
  std::uint32_t n_;
  std::uint64_t items_;
  std::vector<ItemId> row_start_;  // undirected only
};

}  // namespace onbuy

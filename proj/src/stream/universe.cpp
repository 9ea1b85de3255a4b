#include "onbuy/universe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace onbuy {

std::string_view to_string(UniverseKind kind) {
  switch (kind) {
    case UniverseKind::abstract_items: return "abstract-items";
    case UniverseKind::undirected_edges: return "undirected-edges";
    case UniverseKind::directed_arcs: return "directed-arcs";
    case UniverseKind::bipartite_edges: return "bipartite-edges";
  }
  return "unknown";
}

ItemUniverse::ItemUniverse(UniverseKind kind, std::uint32_t n, std::uint64_t items)
    : kind_(kind), n_(n), items_(items) {}

ItemUniverse ItemUniverse::make(UniverseKind kind, std::uint64_t size) {
  constexpr std::uint64_t kMaxItems = std::numeric_limits<ItemId>::max();
  if (kind == UniverseKind::abstract_items) {
    if (size < 1) throw std::invalid_argument("abstract universe needs N >= 1");
    if (size > kMaxItems) throw std::invalid_argument("universe too large");
    return ItemUniverse(kind, static_cast<std::uint32_t>(size), size);
  }
  if (size < 2) {
    throw std::invalid_argument(std::string(to_string(kind)) + " universe needs n >= 2");
  }
  std::uint64_t items = 0;
  switch (kind) {
    case UniverseKind::undirected_edges: items = size * (size - 1) / 2; break;
    case UniverseKind::directed_arcs: items = size * (size - 1); break;
    case UniverseKind::bipartite_edges: items = size * size; break;
    default: break;
  }
  if (items > kMaxItems) throw std::invalid_argument("universe too large");
  ItemUniverse result(kind, static_cast<std::uint32_t>(size), items);
  if (kind == UniverseKind::undirected_edges) {
    result.row_start_.resize(size);
    for (std::uint64_t u = 0; u < size; ++u) {
      result.row_start_[u] = static_cast<ItemId>(u * size - u * (u + 1) / 2);
    }
  }
  return result;
}

ItemId ItemUniverse::id(Vertex u, Vertex v) const {
  switch (kind_) {
    case UniverseKind::undirected_edges: {
      if (u > v) std::swap(u, v);
      const std::uint64_t uu = u;
      return static_cast<ItemId>(uu * n_ - uu * (uu + 1) / 2 + (v - u - 1));
    }
    case UniverseKind::directed_arcs:
      return static_cast<ItemId>(static_cast<std::uint64_t>(u) * (n_ - 1) + (v < u ? v : v - 1));
    case UniverseKind::bipartite_edges:
      return static_cast<ItemId>(static_cast<std::uint64_t>(u) * n_ + v);
    case UniverseKind::abstract_items:
      break;
  }
  return u;
}

Endpoints ItemUniverse::endpoints(ItemId item) const {
  switch (kind_) {
    case UniverseKind::undirected_edges: {
      // Root of u^2 - (2n-1)u + 2 id = 0, then fix rounding on the table.
      const double b = 2.0 * n_ - 1.0;
      double guess = 0.5 * (b - std::sqrt(b * b - 8.0 * static_cast<double>(item)));
      auto u = static_cast<Vertex>(std::max(0.0, std::min(guess, n_ - 2.0)));
      while (u + 1 < n_ - 1 && row_start_[u + 1] <= item) ++u;
      while (row_start_[u] > item) --u;
      return {u, static_cast<Vertex>(item - row_start_[u] + u + 1)};
    }
    case UniverseKind::directed_arcs: {
      const Vertex tail = item / (n_ - 1);
      const Vertex rest = item % (n_ - 1);
      return {tail, rest < tail ? rest : rest + 1};
    }
    case UniverseKind::bipartite_edges:
      return {item / n_, item % n_};
    case UniverseKind::abstract_items:
      break;
  }
  return {item, item};
}

std::uint32_t ItemUniverse::degree() const {
  switch (kind_) {
    case UniverseKind::undirected_edges:
    case UniverseKind::directed_arcs: return n_ - 1;
    case UniverseKind::bipartite_edges: return n_;
    case UniverseKind::abstract_items: break;
  }
  return 0;
}

}  // namespace onbuy

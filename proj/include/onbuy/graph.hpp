#pragma once

#include <cstdint>
#include <vector>

#include "onbuy/numeric.hpp"
#include "onbuy/universe.hpp"

namespace onbuy {

// Union by size with path compression (halving).
class DisjointSets {
 public:
  explicit DisjointSets(std::uint32_t n = 0);
  void reset(std::uint32_t n);
  std::uint32_t find(std::uint32_t x);
  // Returns false when already joined.
  bool unite(std::uint32_t a, std::uint32_t b);
  bool same(std::uint32_t a, std::uint32_t b) { return find(a) == find(b); }
  std::uint32_t size_of(std::uint32_t x) { return size_[find(x)]; }
  std::uint32_t components() const { return components_; }
  std::uint32_t elements() const { return static_cast<std::uint32_t>(parent_.size()); }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
  std::uint32_t components_ = 0;
};

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double cost = 0.0;
};

// Accepted edges with weak-connectivity tracking and adjacency lists.
class PurchasedGraph {
 public:
  PurchasedGraph(std::uint32_t n, bool directed);

  std::uint32_t vertices() const { return n_; }
  bool directed() const { return directed_; }
  void add_edge(Vertex u, Vertex v, double cost);
  bool same_component(Vertex u, Vertex v) { return dsu_.same(u, v); }
  std::uint32_t components() const { return dsu_.components(); }
  std::uint32_t component_size(Vertex v) { return dsu_.size_of(v); }
  Vertex component_of(Vertex v) { return dsu_.find(v); }

  const std::vector<Edge>& edges() const { return edges_; }
  // Out-neighbours for directed graphs; all neighbours otherwise.
  const std::vector<Vertex>& out(Vertex v) const { return out_[v]; }
  const std::vector<Vertex>& in(Vertex v) const { return directed_ ? in_[v] : out_[v]; }
  double total_cost() const { return total_.value(); }

 private:
  std::uint32_t n_;
  bool directed_;
  DisjointSets dsu_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
  KahanSum total_;
};

}  // namespace onbuy

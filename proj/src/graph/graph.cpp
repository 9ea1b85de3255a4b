#include "onbuy/graph.hpp"

#include <numeric>
#include <stdexcept>

namespace onbuy {

DisjointSets::DisjointSets(std::uint32_t n) { reset(n); }

void DisjointSets::reset(std::uint32_t n) {
  parent_.resize(n);
  std::iota(parent_.begin(), parent_.end(), 0u);
  size_.assign(n, 1);
  components_ = n;
}

std::uint32_t DisjointSets::find(std::uint32_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSets::unite(std::uint32_t a, std::uint32_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  --components_;
  return true;
}

PurchasedGraph::PurchasedGraph(std::uint32_t n, bool directed)
    : n_(n), directed_(directed), dsu_(n), out_(n) {
  if (directed) in_.resize(n);
}

void PurchasedGraph::add_edge(Vertex u, Vertex v, double cost) {
  if (u == v || u >= n_ || v >= n_) throw std::invalid_argument("bad edge endpoints");
  edges_.push_back({u, v, cost});
  out_[u].push_back(v);
  if (directed_) {
    in_[v].push_back(u);
  } else {
    out_[v].push_back(u);
  }
  dsu_.unite(u, v);
  total_.add(cost);
}

}  // namespace onbuy

#pragma once

#include <cstdint>
#include <vector>

#include "onbuy/universe.hpp"

namespace onbuy {

constexpr std::uint32_t kUnmatched = 0xffffffffu;

struct Matching {
  std::vector<std::uint32_t> mate_u;  // U vertex -> V vertex
  std::vector<std::uint32_t> mate_v;  // V vertex -> U vertex
  std::uint32_t size = 0;
  bool perfect() const { return size == mate_u.size() && size == mate_v.size(); }
};

using BipartiteAdjacency = std::vector<std::vector<Vertex>>;  // U vertex -> V neighbours

// Maximum-cardinality matching by repeated shortest augmenting paths.
Matching max_bipartite_matching(const BipartiteAdjacency& adj, std::uint32_t n_v);

// Independent depth-first check for an augmenting path.
bool has_augmenting_path(const BipartiteAdjacency& adj, const Matching& m);

// Keeps a maximum matching while edges arrive. Searches are skipped until
// every vertex on both sides has an edge, since before that no perfect
// matching can exist.
class IncrementalMatcher {
 public:
  explicit IncrementalMatcher(std::uint32_t n);
  void add_edge(Vertex u, Vertex v);
  bool perfect() const { return m_.perfect(); }
  const Matching& matching();

 private:
  bool augment_from_all();

  std::uint32_t n_;
  BipartiteAdjacency adj_;
  std::vector<std::uint32_t> deg_v_;
  std::uint32_t covered_u_ = 0, covered_v_ = 0;
  bool primed_ = false;
  Matching m_;
};

}  // namespace onbuy

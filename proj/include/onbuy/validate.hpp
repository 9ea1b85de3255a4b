#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "onbuy/universe.hpp"

namespace onbuy {

// Exact-shape checks: the edge list must be the structure, not contain it.
bool is_spanning_tree(const std::vector<Endpoints>& edges, std::uint32_t n);
// Arcs are (tail, head) and point toward the root.
bool is_arborescence(const std::vector<Endpoints>& arcs, std::uint32_t n, Vertex root);
// Bipartite edges are (u in U, v in V); undirected ones cover [0, n).
bool is_bipartite_perfect_matching(const std::vector<Endpoints>& edges, std::uint32_t n);
bool is_perfect_matching(const std::vector<Endpoints>& edges, std::uint32_t n);
bool is_hamilton_cycle(const std::vector<Endpoints>& edges, std::uint32_t n, bool directed);
bool is_clique(const std::vector<Endpoints>& edges, std::uint32_t r);
bool is_triangle(const std::vector<Endpoints>& edges);
bool is_path(const std::vector<Endpoints>& edges, Vertex s, Vertex t);
// Pairs of edges (2i, 2i+1) each form a path of length two; endpoint pairs
// are pairwise distinct. Wedges may share edges.
bool is_wedge_family(const std::vector<Endpoints>& edges, std::uint32_t count);

// Dispatch by structure name as used on the command line.
bool validate(const std::string& structure, const std::vector<Endpoints>& edges, std::uint32_t n,
              std::uint32_t param = 0);

}  // namespace onbuy

#pragma once

#include <cstddef>
#include <vector>

namespace sparqlkit::evaluator {

/// Bipartite graph as an adjacency matrix: `edges[l][r]` is true when left
/// vertex l may be paired with right vertex r.
using BipartiteGraph = std::vector<std::vector<bool>>;

/// Size of a maximum matching (augmenting paths, Kuhn's algorithm).
/// `match_of_left`, if given, receives the right partner of each left
/// vertex or npos.
std::size_t maximum_matching(const BipartiteGraph& edges, std::size_t right_count,
                             std::vector<std::size_t>* match_of_left = nullptr);

/// True when both sides have the same size and every vertex is matched.
bool has_perfect_matching(const BipartiteGraph& edges, std::size_t right_count);

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

}  // namespace sparqlkit::evaluator

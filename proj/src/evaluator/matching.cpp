#include "sparqlkit/evaluator/matching.hpp"

namespace sparqlkit::evaluator {

namespace {

bool augment(const BipartiteGraph& edges, std::size_t left,
             std::vector<bool>& visited, std::vector<std::size_t>& match_of_right) {
  for (std::size_t r = 0; r < match_of_right.size(); ++r) {
    if (r >= edges[left].size() || !edges[left][r] || visited[r]) continue;
    visited[r] = true;
    if (match_of_right[r] == npos ||
        augment(edges, match_of_right[r], visited, match_of_right)) {
      match_of_right[r] = left;
      return true;
    }
  }
  return false;
}

}  // namespace

std::size_t maximum_matching(const BipartiteGraph& edges, std::size_t right_count,
                             std::vector<std::size_t>* match_of_left) {
  std::vector<std::size_t> match_of_right(right_count, npos);
  std::size_t size = 0;
  for (std::size_t l = 0; l < edges.size(); ++l) {
    std::vector<bool> visited(right_count, false);
    if (augment(edges, l, visited, match_of_right)) ++size;
  }
  if (match_of_left) {
    match_of_left->assign(edges.size(), npos);
    for (std::size_t r = 0; r < right_count; ++r) {
      if (match_of_right[r] != npos) (*match_of_left)[match_of_right[r]] = r;
    }
  }
  return size;
}

bool has_perfect_matching(const BipartiteGraph& edges, std::size_t right_count) {
  if (edges.size() != right_count) return false;
  return maximum_matching(edges, right_count) == right_count;
}

}  // namespace sparqlkit::evaluator

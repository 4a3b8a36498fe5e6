#pragma once

#include <algorithm>
#include <iterator>
#include <span>
#include <stdexcept>
#include <vector>

#include "satlab/graph.hpp"

namespace satlab {

/// First-fit colouring: visits vertices in `order`, placing each in the
/// lowest-indexed class holding none of its neighbours. An empty graph on
/// zero vertices still yields a single (empty) class.
inline std::vector<VertexSet> greedy_coloring(const Graph& g, std::span<const Vertex> order) {
  const std::size_t n = g.vertex_count();
  if (order.size() != n) throw std::invalid_argument("greedy_coloring: order must be a permutation of all vertices");
  std::vector<bool> seen(n, false);
  for (Vertex v : order) {
    if (v >= n || seen[v]) throw std::invalid_argument("greedy_coloring: order is not a permutation");
    seen[v] = true;
  }

  std::vector<VertexSet> classes;
  for (Vertex v : order) {
    auto nb = g.row(v);
    auto it = std::find_if(classes.begin(), classes.end(),
                           [&](const VertexSet& c) { return !bits::intersects(c.words(), nb); });
    if (it == classes.end()) {
      classes.emplace_back(n);
      it = std::prev(classes.end());
    }
    it->insert(v);
  }
  if (classes.empty()) classes.emplace_back(n);
  return classes;
}

inline std::vector<VertexSet> greedy_coloring(const Graph& g) {
  std::vector<Vertex> order(g.vertex_count());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<Vertex>(i);
  return greedy_coloring(g, order);
}

}  // namespace satlab

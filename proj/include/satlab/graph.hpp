#pragma once

// Simple undirected graphs on vertices 0..n-1 with a symmetric bit-matrix
// adjacency. Vertices are 0-based; the literature's [n] = {1..n} maps to
// {0..n-1}.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "satlab/rng.hpp"
#include "satlab/vertex_set.hpp"

namespace satlab {

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  /// Orientation-normalised edge, u < v.
  static Edge of(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Value-semantic graph. Operations in this library take graphs by const
/// reference and return new graphs; add_edge/remove_edge exist for building.
/// Invariants: symmetric rows, empty diagonal, edge_count() == number of
/// adjacent unordered pairs.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : n_(n), stride_(words_for(n)), adj_(n * stride_, 0) {}

  /// Throws std::invalid_argument on a self-loop, out-of-range endpoint or
  /// repeated edge.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges) {
    Graph g(n);
    for (const Edge& e : edges) {
      g.check_pair(e.u, e.v);
      if (!g.add_edge(e.u, e.v))
        throw std::invalid_argument("Graph: duplicate edge " + std::to_string(e.u) + " " + std::to_string(e.v));
    }
    return g;
  }

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return m_; }

  bool has_edge(Vertex u, Vertex v) const { return u < n_ && v < n_ && bits::test(row(u), v); }

  /// Returns false if the edge was already present.
  bool add_edge(Vertex u, Vertex v) {
    check_pair(u, v);
    if (bits::test(row(u), v)) return false;
    bits::set(mutable_row(u), v);
    bits::set(mutable_row(v), u);
    ++m_;
    return true;
  }

  /// Returns false if the edge was absent.
  bool remove_edge(Vertex u, Vertex v) {
    check_pair(u, v);
    if (!bits::test(row(u), v)) return false;
    bits::reset(mutable_row(u), v);
    bits::reset(mutable_row(v), u);
    --m_;
    return true;
  }

  std::span<const Word> row(Vertex v) const { return {adj_.data() + static_cast<std::size_t>(v) * stride_, stride_}; }
  std::size_t words_per_row() const { return stride_; }

  VertexSet neighbors(Vertex v) const {
    auto r = row(v);
    return VertexSet(n_, std::vector<Word>(r.begin(), r.end()));
  }
  std::size_t degree(Vertex v) const { return bits::popcount(row(v)); }

  /// Calls f(u, v) for each edge with u < v, in lexicographic order.
  template <typename F>
  void for_each_edge(F&& f) const {
    for (Vertex u = 0; u < n_; ++u) {
      bits::for_each(row(u), [&](Vertex v) {
        if (u < v) f(u, v);
      });
    }
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for_each_edge([&](Vertex u, Vertex v) { out.push_back({u, v}); });
    return out;
  }

  /// Same vertex count and every edge of *this present in host.
  bool is_subgraph_of(const Graph& host) const {
    if (host.n_ != n_) return false;
    for (std::size_t i = 0; i < adj_.size(); ++i)
      if (adj_[i] & ~host.adj_[i]) return false;
    return true;
  }

  /// Subgraph induced by `vertices`, relabelled so vertices[i] becomes i.
  Graph induced(std::span<const Vertex> vertices) const {
    Graph g(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i)
      for (std::size_t j = i + 1; j < vertices.size(); ++j)
        if (has_edge(vertices[i], vertices[j])) g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    return g;
  }

  /// Image under the relabelling v -> perm[v].
  Graph relabeled(std::span<const Vertex> perm) const {
    if (perm.size() != n_) throw std::invalid_argument("Graph::relabeled: permutation size mismatch");
    Graph g(n_);
    for_each_edge([&](Vertex u, Vertex v) { g.add_edge(perm[u], perm[v]); });
    return g;
  }

  /// Edge-set union (same vertex count).
  Graph& operator|=(const Graph& o) {
    if (o.n_ != n_) throw std::invalid_argument("Graph union: vertex count mismatch");
    for (std::size_t i = 0; i < adj_.size(); ++i) adj_[i] |= o.adj_[i];
    m_ = bits::popcount(adj_) / 2;
    return *this;
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.adj_ == b.adj_; }

 private:
  std::span<Word> mutable_row(Vertex v) { return {adj_.data() + static_cast<std::size_t>(v) * stride_, stride_}; }

  void check_pair(Vertex u, Vertex v) const {
    if (u >= n_ || v >= n_)
      throw std::invalid_argument("Graph: vertex out of range (" + std::to_string(u) + ", " + std::to_string(v) +
                                  ") with n=" + std::to_string(n_));
    if (u == v) throw std::invalid_argument("Graph: self-loop at " + std::to_string(u));
  }

  std::size_t n_ = 0;
  std::size_t stride_ = 0;
  std::size_t m_ = 0;
  std::vector<Word> adj_;
};

inline Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline Graph cycle_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle_graph: need n >= 3");
  Graph g(n);
  for (Vertex v = 0; v < n; ++v) g.add_edge(v, static_cast<Vertex>((v + 1) % n));
  return g;
}

/// G(n, p): one Bernoulli(p) draw per pair, pairs visited in row-major order
/// (0,1), (0,2), ..., (0,n-1), (1,2), ...
inline Graph gnp_generate(std::size_t n, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("gnp_generate: p must lie in [0, 1]");
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) g.add_edge(u, v);
  return g;
}

inline Graph gnp_generate(std::size_t n, double p, RngHandle handle) {
  Rng rng(handle);
  return gnp_generate(n, p, rng);
}

inline VertexSet common_neighbors(const Graph& g, Vertex u, Vertex v) {
  if (u == v || u >= g.vertex_count() || v >= g.vertex_count())
    throw std::invalid_argument("common_neighbors: need distinct in-range vertices");
  VertexSet out = g.neighbors(u);
  out &= g.row(v);
  return out;
}

/// Vertices adjacent in g to every member of x (x itself excluded).
inline VertexSet common_neighborhood(const Graph& g, const VertexSet& x) {
  VertexSet out = VertexSet::full(g.vertex_count());
  x.for_each([&](Vertex v) { out &= g.row(v); });
  out -= x;
  return out;
}

}  // namespace satlab

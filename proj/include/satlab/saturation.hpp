#pragma once

// K_s-saturation in a host graph: the completion predicate, exact saturation
// checking, greedy maximal K_s-free extension and the one-sided star
// construction for triangles.

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "satlab/cliques.hpp"
#include "satlab/graph.hpp"
#include "satlab/rng.hpp"

namespace satlab {

/// Decides "adding uv to h creates a new K_s", i.e. the common neighbourhood
/// of u and v in h contains a K_{s-2}. Holds a reference to h, so edges added
/// to h after construction are seen by later queries.
class CompletionChecker {
 public:
  CompletionChecker(const Graph& h, std::size_t s) : h_(h), s_(s), common_(h.words_per_row()), search_(h, s >= 2 ? s - 2 : 0) {
    if (s < 3) throw std::invalid_argument("CompletionChecker: need s >= 3");
  }

  bool completes(Vertex u, Vertex v) {
    if (s_ == 3) return bits::intersects(h_.row(u), h_.row(v));
    bits::assign_and(common_, h_.row(u), h_.row(v));
    return search_.run(common_, s_ - 2);
  }

  /// Common-neighbourhood clique certifying completion, if any.
  std::optional<std::vector<Vertex>> witness(Vertex u, Vertex v) {
    bits::assign_and(common_, h_.row(u), h_.row(v));
    if (!search_.run(common_, s_ - 2)) return std::nullopt;
    return search_.chosen();
  }

  std::size_t clique_size() const { return s_; }

 private:
  const Graph& h_;
  std::size_t s_;
  std::vector<Word> common_;
  detail::CliqueSearch search_;
};

inline bool completes_pair(const Graph& h, Vertex u, Vertex v, std::size_t s) {
  if (s < 3) throw std::invalid_argument("completes_pair: need s >= 3");
  if (u == v || u >= h.vertex_count() || v >= h.vertex_count())
    throw std::invalid_argument("completes_pair: need distinct in-range vertices");
  if (h.has_edge(u, v)) throw std::invalid_argument("completes_pair: uv is already an edge");
  return CompletionChecker(h, s).completes(u, v);
}

inline bool is_ks_free(const Graph& h, std::size_t s) { return !has_clique(h, s); }

struct SaturationReport {
  bool is_ks_free = false;
  std::optional<VertexSet> ks_witness;  // some K_s of H when !is_ks_free
  std::vector<Edge> incomplete_edges;   // host edges missing from H that H does not complete
  std::size_t edge_count = 0;
  std::size_t missing_edges = 0;  // |E(G) - E(H)|

  bool is_saturated() const { return is_ks_free && incomplete_edges.empty(); }
};

namespace detail {

inline void require_subgraph(const Graph& h, const Graph& g, const char* who) {
  if (h.vertex_count() != g.vertex_count())
    throw std::invalid_argument(std::string(who) + ": H and G must share the vertex set");
  if (!h.is_subgraph_of(g)) throw std::invalid_argument(std::string(who) + ": H is not a subgraph of G");
}

/// Calls f(u, v) for each host edge u < v absent from h.
template <typename F>
void for_each_missing_edge(const Graph& h, const Graph& g, F&& f) {
  const std::size_t stride = g.words_per_row();
  std::vector<Word> missing(stride);
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    auto gr = g.row(u);
    auto hr = h.row(u);
    for (std::size_t i = 0; i < stride; ++i) missing[i] = gr[i] & ~hr[i];
    // only v > u
    const std::size_t w = (u + 1) / kWordBits;
    for (std::size_t i = 0; i < w; ++i) missing[i] = 0;
    if (w < stride) missing[w] &= ~((Word{1} << ((u + 1) % kWordBits)) - 1);
    bits::for_each(std::span<const Word>(missing), [&](Vertex v) { f(u, v); });
  }
}

}  // namespace detail

inline SaturationReport is_ks_saturated(const Graph& h, const Graph& g, std::size_t s) {
  detail::require_subgraph(h, g, "is_ks_saturated");
  SaturationReport report;
  report.ks_witness = find_clique(h, s);
  report.is_ks_free = !report.ks_witness.has_value();
  report.edge_count = h.edge_count();
  report.missing_edges = g.edge_count() - h.edge_count();
  CompletionChecker checker(h, s);
  detail::for_each_missing_edge(h, g, [&](Vertex u, Vertex v) {
    if (!checker.completes(u, v)) report.incomplete_edges.push_back({u, v});
  });
  return report;
}

/// Host edges missing from h that h does not complete.
inline std::vector<Edge> incomplete_edges(const Graph& h, const Graph& g, std::size_t s) {
  detail::require_subgraph(h, g, "incomplete_edges");
  std::vector<Edge> out;
  CompletionChecker checker(h, s);
  detail::for_each_missing_edge(h, g, [&](Vertex u, Vertex v) {
    if (!checker.completes(u, v)) out.push_back({u, v});
  });
  return out;
}

/// Greedy maximal K_s-free supergraph of h inside g. Missing host edges are
/// visited in a uniformly shuffled order and each one whose addition creates
/// no K_s is added. Edges h already completes are never addable (completion
/// is monotone), so only the initially incomplete ones are shuffled.
inline Graph maximal_ks_free_extension(const Graph& h, const Graph& g, std::size_t s, Rng& rng) {
  detail::require_subgraph(h, g, "maximal_ks_free_extension");
  if (has_clique(h, s)) throw std::invalid_argument("maximal_ks_free_extension: H already contains a K_s");
  Graph out = h;
  std::vector<Edge> candidates = incomplete_edges(out, g, s);
  rng.shuffle(std::span<Edge>(candidates));
  CompletionChecker checker(out, s);
  for (const Edge& e : candidates)
    if (!checker.completes(e.u, e.v)) out.add_edge(e.u, e.v);
  return out;
}

struct NaiveConstruction {
  Graph graph;
  std::vector<Vertex> picked;        // in pick order
  std::size_t bipartite_edges = 0;   // |G[picked, rest]|
  std::size_t extension_edges = 0;   // edges added afterwards inside the picked set
};

/// Triangle-saturated subgraph built from one-sided stars: vertices are
/// picked in random order and H keeps exactly the host edges between the
/// picked set A and the rest B. Picking stops once every host edge inside B
/// is completed by a common neighbour in A; host edges inside A that remain
/// incomplete are then finished by maximal_ks_free_extension.
inline NaiveConstruction naive_sequential_construction(const Graph& g, Rng& rng) {
  const std::size_t n = g.vertex_count();
  const std::size_t stride = g.words_per_row();
  NaiveConstruction out;

  // pending[u] = host neighbours w of u, both in B, whose pair is not yet completed
  std::vector<Word> pending(n * stride);
  for (Vertex u = 0; u < n; ++u) {
    auto r = g.row(u);
    std::copy(r.begin(), r.end(), pending.begin() + static_cast<std::ptrdiff_t>(u * stride));
  }
  auto prow = [&](Vertex u) { return std::span<Word>(pending.data() + u * stride, stride); };
  std::size_t pending_count = 2 * g.edge_count();

  std::vector<Vertex> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<Vertex>(i);
  rng.shuffle(std::span<Vertex>(order));

  VertexSet in_b = VertexSet::full(n);
  std::vector<Word> nb(stride);
  for (std::size_t idx = 0; idx < n && pending_count > 0; ++idx) {
    const Vertex v = order[idx];
    bits::for_each(std::span<const Word>(prow(v)), [&](Vertex w) {
      bits::reset(prow(w), v);
      pending_count -= 2;
    });
    std::fill(prow(v).begin(), prow(v).end(), 0);
    in_b.erase(v);
    out.picked.push_back(v);

    bits::assign_and(nb, g.row(v), in_b.words());
    bits::for_each(std::span<const Word>(nb), [&](Vertex u) {
      auto r = prow(u);
      const std::size_t before = bits::popcount(r);
      for (std::size_t i = 0; i < stride; ++i) r[i] &= ~nb[i];
      pending_count -= before - bits::popcount(r);
    });
  }

  Graph h(n);
  for (Vertex a : out.picked) {
    bits::for_each(g.row(a), [&](Vertex b) {
      if (in_b.contains(b)) h.add_edge(a, b);
    });
  }
  out.bipartite_edges = h.edge_count();
  out.graph = maximal_ks_free_extension(h, g, 3, rng);
  out.extension_edges = out.graph.edge_count() - out.bipartite_edges;
  return out;
}

/// Vertices adjacent to x and to no member of q (x and q excluded).
inline VertexSet escape_vertices(const Graph& g, Vertex x, const VertexSet& q) {
  if (q.contains(x)) throw std::invalid_argument("escape_vertices: x must not belong to Q");
  VertexSet out = g.neighbors(x);
  out -= q;
  q.for_each([&](Vertex w) {
    VertexSet nw = g.neighbors(w);
    out -= nw;
  });
  return out;
}

/// n log_a(n) - 6 n log_a(log_a(n)) with a = 1/(1-p). Negative for every
/// practical n; returned as computed. Extended precision so that n up to
/// about 2^16000 stays finite.
inline long double lower_bound_value(long double n, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("lower_bound_value: need 0 < p < 1");
  if (!(n > 1.0L)) throw std::invalid_argument("lower_bound_value: need n > 1");
  const long double log2_alpha = -std::log2(1.0L - static_cast<long double>(p));
  const long double l = std::log2(n) / log2_alpha;
  return n * l - 6.0L * n * (std::log2(l) / log2_alpha);
}

}  // namespace satlab

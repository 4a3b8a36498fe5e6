#pragma once

// Weak K_s-saturation (K_s-bootstrap percolation) and the clique-extension
// construction of a minimum weakly saturated subgraph on
// (s-2) n - C(s-1, 2) edges.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "satlab/cliques.hpp"
#include "satlab/graph.hpp"
#include "satlab/rng.hpp"
#include "satlab/saturation.hpp"

namespace satlab {

struct ClosureStep {
  Edge edge;
  std::vector<Vertex> witness;  // the s vertices of the new K_s, sorted
};

using ClosureTrace = std::vector<ClosureStep>;

struct ClosureResult {
  Graph graph;
  ClosureTrace trace;
};

namespace detail {

inline ClosureResult closure_impl(const Graph& h, const Graph& g, std::size_t s, Rng* rng) {
  require_subgraph(h, g, "bootstrap_closure");
  if (s < 3) throw std::invalid_argument("bootstrap_closure: need s >= 3");
  ClosureResult out{h, {}};
  std::vector<Edge> missing;
  for_each_missing_edge(h, g, [&](Vertex u, Vertex v) { missing.push_back({u, v}); });
  CompletionChecker checker(out.graph, s);
  bool changed = true;
  while (changed && !missing.empty()) {
    changed = false;
    if (rng) rng->shuffle(std::span<Edge>(missing));
    std::size_t keep = 0;
    for (const Edge& e : missing) {
      if (auto w = checker.witness(e.u, e.v)) {
        std::vector<Vertex> witness = *w;
        witness.push_back(e.u);
        witness.push_back(e.v);
        std::sort(witness.begin(), witness.end());
        out.graph.add_edge(e.u, e.v);
        out.trace.push_back({e, std::move(witness)});
        changed = true;
      } else {
        missing[keep++] = e;
      }
    }
    missing.resize(keep);
  }
  return out;
}

}  // namespace detail

/// K_s-bootstrap closure of h inside g: host edges are added while some
/// missing one would create a new K_s. Lexicographic sweeps.
inline ClosureResult bootstrap_closure(const Graph& h, const Graph& g, std::size_t s) {
  return detail::closure_impl(h, g, s, nullptr);
}

/// Same fixpoint, with every sweep visiting the remaining edges in a random
/// order. Used to exercise order independence.
inline ClosureResult bootstrap_closure(const Graph& h, const Graph& g, std::size_t s, Rng& rng) {
  return detail::closure_impl(h, g, s, &rng);
}

/// Replays a trace on top of h. Every step must add a host edge that is
/// absent at that point, with a witness of exactly s vertices containing both
/// endpoints whose other pairs are all present.
inline bool verify_closure_trace(const Graph& h, const Graph& g, std::size_t s, const ClosureTrace& trace) {
  Graph cur = h;
  for (const ClosureStep& step : trace) {
    const Edge& e = step.edge;
    if (!g.has_edge(e.u, e.v) || cur.has_edge(e.u, e.v)) return false;
    if (step.witness.size() != s) return false;
    const auto& w = step.witness;
    if (std::find(w.begin(), w.end(), e.u) == w.end() || std::find(w.begin(), w.end(), e.v) == w.end()) return false;
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = i + 1; j < w.size(); ++j) {
        if (Edge::of(w[i], w[j]) == e) continue;
        if (!cur.has_edge(w[i], w[j])) return false;
      }
    cur.add_edge(e.u, e.v);
  }
  return true;
}

inline bool is_weakly_saturated(const Graph& h, const Graph& g, std::size_t s) {
  detail::require_subgraph(h, g, "is_weakly_saturated");
  if (!is_ks_free(h, s)) return false;
  return bootstrap_closure(h, g, s).graph == g;
}

/// (s-2) n - C(s-1, 2).
inline std::int64_t wsat_formula(std::int64_t n, std::int64_t s) {
  if (s < 2) throw std::invalid_argument("wsat_formula: need s >= 2");
  if (n < s - 1) throw std::invalid_argument("wsat_formula: need n >= s - 1");
  return (s - 2) * n - (s - 1) * (s - 2) / 2;
}

/// Every non-adjacent pair {u, v} of g has a clique extension of size s-2,
/// i.e. g is K_s-saturated inside K_n.
inline bool strongly_saturated_in_kn(const Graph& g, std::size_t s) {
  if (s < 3) throw std::invalid_argument("strongly_saturated_in_kn: need s >= 3");
  const std::size_t n = g.vertex_count();
  detail::CliqueSearch search(g, s - 2);
  std::vector<Word> common(g.words_per_row());
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) {
      if (g.has_edge(u, v)) continue;
      bits::assign_and(common, g.row(u), g.row(v));
      if (!search.run(common, s - 2)) return false;
    }
  return true;
}

struct WeakSatStep {
  Vertex vertex = 0;
  VertexSet clique;  // s-2 vertices of the core forming a clique with `vertex`
};

struct WeakSatTrace {
  VertexSet base_clique;  // C
  VertexSet core;         // vertices outside C adjacent to all of C
  std::vector<WeakSatStep> steps;
  std::size_t base_attempts = 0;  // base cliques tried, including the one kept
};

enum class WeakSatStage { kNoBaseClique, kNoVertexClique };

struct WeakSatFailure {
  WeakSatStage stage;
  std::optional<Vertex> vertex;  // set for kNoVertexClique
  std::string message;
};

struct WeakSatOutcome {
  Graph graph;
  WeakSatTrace trace;
  std::optional<WeakSatFailure> failure;
  bool ks_free = false;  // exact check of `graph`

  bool succeeded() const { return !failure.has_value(); }
};

struct WeakSatOptions {
  std::size_t max_base_attempts = 64;
};

namespace detail {

/// One (s-2)-clique through each vertex that lies in one, deduplicated and
/// ordered by decreasing core size (ties by discovery order).
inline std::vector<VertexSet> base_clique_candidates(const Graph& g, std::size_t r) {
  const std::size_t n = g.vertex_count();
  std::vector<std::pair<std::size_t, VertexSet>> found;
  for (Vertex v = 0; v < n; ++v) {
    std::optional<VertexSet> c;
    if (r == 1) {
      c = VertexSet(n, {v});
    } else {
      VertexSet nb = VertexSet::full(n);
      nb &= g.row(v);
      c = find_clique(g, nb, r - 1);
      if (c) c->insert(v);
    }
    if (!c) continue;
    if (std::any_of(found.begin(), found.end(), [&](const auto& f) { return f.second == *c; })) continue;
    found.emplace_back(common_neighborhood(g, *c).size(), std::move(*c));
  }
  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<VertexSet> out;
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

inline WeakSatOutcome weak_sat_from_base(const Graph& g, std::size_t s, const VertexSet& base, Rng& rng) {
  const std::size_t n = g.vertex_count();
  WeakSatOutcome out;
  out.graph = Graph(n);
  out.trace.base_clique = base;
  out.trace.core = common_neighborhood(g, base);

  const std::vector<Vertex> c = base.to_vector();
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j) out.graph.add_edge(c[i], c[j]);
  out.trace.core.for_each([&](Vertex v) {
    for (Vertex x : c) out.graph.add_edge(x, v);
  });

  std::vector<Vertex> rest;
  for (Vertex v = 0; v < n; ++v)
    if (!base.contains(v) && !out.trace.core.contains(v)) rest.push_back(v);
  rng.shuffle(std::span<Vertex>(rest));

  for (Vertex v : rest) {
    VertexSet pool = out.trace.core;
    pool &= g.row(v);
    auto ci = find_clique(g, pool, s - 2);
    if (!ci) {
      out.failure = WeakSatFailure{WeakSatStage::kNoVertexClique, v,
                                   "vertex " + std::to_string(v) + " has no " + std::to_string(s - 2) +
                                       "-clique among its core neighbours"};
      break;
    }
    ci->for_each([&](Vertex x) { out.graph.add_edge(v, x); });
    out.trace.steps.push_back({v, std::move(*ci)});
  }
  return out;
}

}  // namespace detail

/// H = G[C] + all edges between C and the core + s-2 edges from every other
/// vertex into a clique of the core. Vertices outside C and the core are
/// processed in random order. Base cliques are tried largest core first, up
/// to options.max_base_attempts of them; the first one where every vertex
/// finds its clique is kept, otherwise the failure of the first attempt is
/// reported. Success only means every search found its clique; on hosts
/// that are not good enough (C4 with s=3, say) the output need not be
/// weakly saturated, so callers check is_weakly_saturated.
inline WeakSatOutcome construct_weak_sat(const Graph& g, std::size_t s, Rng& rng, const WeakSatOptions& options = {}) {
  if (s < 3) throw std::invalid_argument("construct_weak_sat: need s >= 3");
  if (options.max_base_attempts < 1) throw std::invalid_argument("construct_weak_sat: need max_base_attempts >= 1");
  const std::vector<VertexSet> bases = detail::base_clique_candidates(g, s - 2);
  if (bases.empty()) {
    WeakSatOutcome out;
    out.graph = Graph(g.vertex_count());
    out.failure = WeakSatFailure{WeakSatStage::kNoBaseClique, std::nullopt,
                                 "no clique on " + std::to_string(s - 2) + " vertices"};
    return out;
  }
  std::optional<WeakSatOutcome> first;
  const std::size_t attempts = std::min(bases.size(), options.max_base_attempts);
  for (std::size_t i = 0; i < attempts; ++i) {
    WeakSatOutcome out = detail::weak_sat_from_base(g, s, bases[i], rng);
    out.trace.base_attempts = i + 1;
    if (out.succeeded()) {
      out.ks_free = is_ks_free(out.graph, s);
      return out;
    }
    if (!first) first = std::move(out);
  }
  first->trace.base_attempts = attempts;
  first->ks_free = is_ks_free(first->graph, s);
  return std::move(*first);
}

}  // namespace satlab

#pragma once

// Layered K_s-saturated subgraph of G(n, p) on roughly n log_{1/(1-p)} n
// edges.
//
//   A1  star layer: all host edges A1-B1, plus a K_{s-1}-free graph on A1
//   B2  vertices of B1 with few A1-neighbours; their internal pairs are
//       covered by a second star layer A2-B2
//   A3  split into parts, one per colour class of G[A2]; part i covers the
//       pairs between colour class i and B3 = B1 - B2
//
// The union glues K_s-free pieces along independent sets and is therefore
// K_s-free; whatever it leaves incomplete is finished by the greedy maximal
// extension.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "satlab/coloring.hpp"
#include "satlab/graph.hpp"
#include "satlab/krivelevich.hpp"
#include "satlab/rng.hpp"
#include "satlab/saturation.hpp"

namespace satlab {

struct ConstructionParams {
  double alpha = 0.0;  // 1 / (1 - p)
  double beta = 0.0;   // 1 / (1 - p^2)
  std::size_t a1 = 0;
  std::size_t a2 = 0;
  std::size_t a3 = 0;
  std::size_t a4 = 0;  // part size inside A3; set by the construction
  std::size_t k = 0;   // colour classes of G[A2]; set by the construction
};

class ParamsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kMinLayeredOrder = 100;

namespace detail {

inline double log_base(double x, double base) { return std::log(x) / std::log(base); }

inline void validate_probability_open(double p, const char* who) {
  if (!(p > 0.0 && p < 1.0)) throw ParamsError(std::string(who) + ": need 0 < p < 1");
}

}  // namespace detail

/// Validates a1, a2, a3 against n: each at least 1 and a1 + a2 + a3 <= n / 2.
inline void validate_params(const ConstructionParams& params, std::size_t n) {
  if (params.a1 < 1 || params.a2 < 1 || params.a3 < 1) throw ParamsError("layer sizes a1, a2, a3 must be >= 1");
  if (2 * (params.a1 + params.a2 + params.a3) > n)
    throw ParamsError("a1 + a2 + a3 = " + std::to_string(params.a1 + params.a2 + params.a3) +
                      " exceeds n/2 = " + std::to_string(n / 2));
}

/// Layer sizes
///   a1 = (1/p) (1 + 3 / ln log_alpha n) log_alpha n
///   a2 = (1 + 2 / ln log_beta n) log_beta C(n, 2)
///   a3 = a2 / sqrt(ln a2)
/// each rounded up. Refuses n < 100 and parameter sets violating
/// validate_params.
inline ConstructionParams default_params(std::size_t n, double p, std::size_t s) {
  detail::validate_probability_open(p, "default_params");
  if (s < 3) throw ParamsError("default_params: need s >= 3");
  if (n < kMinLayeredOrder)
    throw ParamsError("default_params: n = " + std::to_string(n) + " is below the supported minimum of " +
                      std::to_string(kMinLayeredOrder));
  ConstructionParams params;
  params.alpha = 1.0 / (1.0 - p);
  params.beta = 1.0 / (1.0 - p * p);
  const auto nd = static_cast<double>(n);

  const double la = detail::log_base(nd, params.alpha);
  if (!(la > 1.0)) throw ParamsError("default_params: a1 formula needs ln(log_alpha n) > 0");
  const double lb = detail::log_base(nd, params.beta);
  if (!(lb > 1.0)) throw ParamsError("default_params: a2 formula needs ln(log_beta n) > 0");

  params.a1 = static_cast<std::size_t>(std::ceil((1.0 / p) * (1.0 + 3.0 / std::log(la)) * la));
  const double pairs = nd * (nd - 1.0) / 2.0;
  params.a2 = static_cast<std::size_t>(std::ceil((1.0 + 2.0 / std::log(lb)) * detail::log_base(pairs, params.beta)));
  const double ln_a2 = std::log(static_cast<double>(params.a2));
  if (!(ln_a2 > 0.0)) throw ParamsError("default_params: a3 formula needs ln a2 > 0");
  params.a3 = static_cast<std::size_t>(std::ceil(static_cast<double>(params.a2) / std::sqrt(ln_a2)));
  validate_params(params, n);
  return params;
}

/// Smaller layers for laptop-scale n, where the default correction terms
/// dominate the edge count:
///   a1 = (1/p) (1 + 1 / ln log_alpha n) log_alpha n
///   a2 = a3 = log_alpha log_alpha n
/// rounded up. Same refusals as default_params.
inline ConstructionParams compact_params(std::size_t n, double p, std::size_t s) {
  detail::validate_probability_open(p, "compact_params");
  if (s < 3) throw ParamsError("compact_params: need s >= 3");
  if (n < kMinLayeredOrder)
    throw ParamsError("compact_params: n = " + std::to_string(n) + " is below the supported minimum of " +
                      std::to_string(kMinLayeredOrder));
  ConstructionParams params;
  params.alpha = 1.0 / (1.0 - p);
  params.beta = 1.0 / (1.0 - p * p);
  const double la = detail::log_base(static_cast<double>(n), params.alpha);
  if (!(la > 1.0)) throw ParamsError("compact_params: a1 formula needs ln(log_alpha n) > 0");
  params.a1 = static_cast<std::size_t>(std::ceil((1.0 / p) * (1.0 + 1.0 / std::log(la)) * la));
  params.a2 = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(detail::log_base(la, params.alpha))));
  params.a3 = params.a2;
  validate_params(params, n);
  return params;
}

/// ConstructionParams for explicit layer sizes (alpha and beta from p).
inline ConstructionParams make_params(double p, std::size_t a1, std::size_t a2, std::size_t a3) {
  detail::validate_probability_open(p, "make_params");
  ConstructionParams params;
  params.alpha = 1.0 / (1.0 - p);
  params.beta = 1.0 / (1.0 - p * p);
  params.a1 = a1;
  params.a2 = a2;
  params.a3 = a3;
  return params;
}

/// B2 membership cut-off: p a1 - log_alpha n / ln log_alpha n. With the
/// default a1 this is (1 + 2 / ln log_alpha n) log_alpha n.
inline double b2_threshold(std::size_t n, double p, std::size_t a1) {
  const double la = detail::log_base(static_cast<double>(n), 1.0 / (1.0 - p));
  return p * static_cast<double>(a1) - la / std::log(la);
}

struct LayeredPartition {
  VertexSet a1, a2, a3, b1, b2, b3;
  std::vector<VertexSet> a2_classes;  // colour classes of G[A2]
  std::vector<VertexSet> a3_parts;    // part i is attached to a2_classes[i]
};

struct LayeredDiagnostics {
  ConstructionParams params;  // with k and a4 filled in
  double b2_threshold = 0.0;
  std::size_t glued_edges = 0;        // |H1 u H2 u H3|
  bool glued_ks_free = false;         // exact check of the union
  std::size_t f_size = 0;             // incomplete host edges in B1, not inside B2
  std::size_t fprime_size = 0;        // incomplete host edges between A2 and B3
  std::size_t residual_incomplete = 0;  // all incomplete host edges of the union
  std::vector<std::string> krivelevich_failures;  // layer ids whose inner graph failed verification
};

struct LayeredResult {
  Graph graph;
  Graph glued;
  LayeredPartition partition;
  SaturationReport report;
  LayeredDiagnostics diagnostics;
};

struct LayeredOptions {
  KrivelevichOptions krivelevich;
};

namespace detail {

inline std::vector<Vertex> members(const VertexSet& s) { return s.to_vector(); }

/// Adds to h the edges of `inner` (on `layer`, relabelled) lifted back.
inline void lift_edges(Graph& h, const Graph& inner, std::span<const Vertex> layer) {
  inner.for_each_edge([&](Vertex u, Vertex v) { h.add_edge(layer[u], layer[v]); });
}

/// Adds every host edge between `from` and `to`.
inline void add_host_edges_between(Graph& h, const Graph& g, const VertexSet& from, const VertexSet& to) {
  from.for_each([&](Vertex a) {
    VertexSet nb = g.neighbors(a);
    nb &= to;
    nb.for_each([&](Vertex b) { h.add_edge(a, b); });
  });
}

}  // namespace detail

inline LayeredResult layered_construction(const Graph& g, double p, std::size_t s, ConstructionParams params, Rng& rng,
                                          const LayeredOptions& options = {}) {
  detail::validate_probability_open(p, "layered_construction");
  if (s < 3) throw ParamsError("layered_construction: need s >= 3");
  const std::size_t n = g.vertex_count();
  validate_params(params, n);

  LayeredResult result;
  LayeredPartition& part = result.partition;
  LayeredDiagnostics& diag = result.diagnostics;

  // A1, A2, A3 are consecutive vertex ranges at the front.
  const auto e1 = static_cast<Vertex>(params.a1);
  const auto e2 = static_cast<Vertex>(params.a1 + params.a2);
  const auto e3 = static_cast<Vertex>(params.a1 + params.a2 + params.a3);
  part.a1 = VertexSet::range(n, 0, e1);
  part.a2 = VertexSet::range(n, e1, e2);
  part.a3 = VertexSet::range(n, e2, e3);
  part.b1 = VertexSet::range(n, e3, static_cast<Vertex>(n));

  Graph h(n);
  auto build_inner = [&](const VertexSet& layer, const std::string& id) {
    const std::vector<Vertex> vs = detail::members(layer);
    const Graph inner_host = g.induced(vs);
    KrivelevichResult inner =
        krivelevich_subgraph(inner_host, s, krivelevich_subset_size(vs.size(), s), rng, options.krivelevich);
    if (!inner.report.passed()) diag.krivelevich_failures.push_back(id);
    return std::pair{std::move(inner), vs};
  };

  // Layer 1.
  {
    auto [inner, vs] = build_inner(part.a1, "A1");
    detail::lift_edges(h, inner.graph, vs);
    detail::add_host_edges_between(h, g, part.a1, part.b1);
  }

  // B2: B1-vertices with fewer than the threshold many A1-neighbours.
  diag.b2_threshold = b2_threshold(n, p, params.a1);
  part.b2 = VertexSet(n);
  part.b1.for_each([&](Vertex v) {
    if (static_cast<double>(bits::and_popcount(g.row(v), part.a1.words())) < diag.b2_threshold) part.b2.insert(v);
  });
  part.b3 = part.b1 - part.b2;

  // Layer 2.
  {
    auto [inner, vs] = build_inner(part.a2, "A2");
    detail::lift_edges(h, inner.graph, vs);
    detail::add_host_edges_between(h, g, part.a2, part.b2);
  }

  // Layer 3: colour G[A2], split A3 into 2k parts and attach k of them.
  {
    const std::vector<Vertex> a2v = detail::members(part.a2);
    const Graph g_a2 = g.induced(a2v);
    for (const VertexSet& cls : greedy_coloring(g_a2)) {
      VertexSet lifted(n);
      cls.for_each([&](Vertex i) { lifted.insert(a2v[i]); });
      part.a2_classes.push_back(std::move(lifted));
    }
    params.k = part.a2_classes.size();
    if (params.a3 < params.k)
      throw ParamsError("layered_construction: a3 = " + std::to_string(params.a3) + " is smaller than the " +
                        std::to_string(params.k) + " colour classes of G[A2]");
    params.a4 = std::max<std::size_t>(1, params.a3 / (2 * params.k));
    const std::size_t part_count = std::min(2 * params.k, params.a3 / params.a4);

    const std::vector<Vertex> a3v = detail::members(part.a3);
    std::vector<std::pair<KrivelevichResult, std::vector<Vertex>>> built;
    std::vector<std::size_t> passing;
    std::vector<std::size_t> failing;
    for (std::size_t j = 0; j < part_count; ++j) {
      VertexSet piece(n);
      for (std::size_t t = j * params.a4; t < (j + 1) * params.a4; ++t) piece.insert(a3v[t]);
      const std::vector<Vertex> vs = detail::members(piece);
      KrivelevichResult inner =
          krivelevich_subgraph(g.induced(vs), s, krivelevich_subset_size(vs.size(), s), rng, options.krivelevich);
      (inner.report.passed() ? passing : failing).push_back(j);
      built.emplace_back(std::move(inner), vs);
    }
    std::vector<std::size_t> chosen = passing;
    chosen.insert(chosen.end(), failing.begin(), failing.end());
    chosen.resize(params.k);
    for (std::size_t i = 0; i < params.k; ++i) {
      auto& [inner, vs] = built[chosen[i]];
      if (!inner.report.passed()) diag.krivelevich_failures.push_back("A3." + std::to_string(i));
      detail::lift_edges(h, inner.graph, vs);
      const VertexSet piece(n, std::span<const Vertex>(vs));
      detail::add_host_edges_between(h, g, piece, part.a2_classes[i] | part.b3);
      part.a3_parts.push_back(piece);
    }
  }

  diag.params = params;
  diag.glued_edges = h.edge_count();
  diag.glued_ks_free = is_ks_free(h, s);
  result.glued = h;

  {
    CompletionChecker checker(h, s);
    detail::for_each_missing_edge(h, g, [&](Vertex u, Vertex v) {
      if (checker.completes(u, v)) return;
      ++diag.residual_incomplete;
      if (part.b1.contains(u) && part.b1.contains(v) && !(part.b2.contains(u) && part.b2.contains(v))) ++diag.f_size;
      if ((part.a2.contains(u) && part.b3.contains(v)) || (part.a2.contains(v) && part.b3.contains(u)))
        ++diag.fprime_size;
    });
  }

  if (!diag.glued_ks_free) {
    // Cannot happen for a correct gluing; report instead of extending.
    result.graph = h;
    result.report = is_ks_saturated(h, g, s);
    return result;
  }
  result.graph = maximal_ks_free_extension(h, g, s, rng);
  result.report = is_ks_saturated(result.graph, g, s);
  return result;
}

}  // namespace satlab

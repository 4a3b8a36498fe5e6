#pragma once

// K_{s-1}-free subgraphs in which every vertex subset of a given size still
// spans a K_{s-2}. Only existence is known for random graphs, so the
// construction here is a randomized greedy heuristic whose output is checked
// by verify_krivelevich.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "satlab/cliques.hpp"
#include "satlab/graph.hpp"
#include "satlab/rng.hpp"
#include "satlab/saturation.hpp"

namespace satlab {

struct KrivelevichReport {
  bool ks1_free = false;       // exact
  std::size_t failures = 0;    // checked subsets spanning no K_{s-2}
  std::size_t checked = 0;
  bool exhaustive = false;

  bool passed() const { return ks1_free && failures == 0; }
};

inline constexpr std::uint64_t kExhaustiveSubsetLimit = 1'000'000;

/// C(n, k) saturating at limit + 1.
inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t limit) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  long double c = 1.0L;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c = c * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (c > static_cast<long double>(limit)) return limit + 1;
  }
  return static_cast<std::uint64_t>(std::llround(c));
}

inline KrivelevichReport verify_krivelevich(const Graph& h, std::size_t s, std::size_t subset_size, std::size_t samples,
                                            Rng& rng) {
  const std::size_t a = h.vertex_count();
  if (s < 3) throw std::invalid_argument("verify_krivelevich: need s >= 3");
  if (samples == 0) throw std::invalid_argument("verify_krivelevich: need samples >= 1");
  if (subset_size > a) throw std::invalid_argument("verify_krivelevich: subset_size exceeds vertex count");

  KrivelevichReport report;
  report.ks1_free = !has_clique(h, s - 1);
  const std::size_t need = s - 2;
  detail::CliqueSearch search(h, need);
  VertexSet subset(a);
  auto check = [&](std::span<const Vertex> members) {
    subset.clear();
    for (Vertex v : members) subset.insert(v);
    ++report.checked;
    if (!search.run(subset.words(), need)) ++report.failures;
  };

  const std::uint64_t total = binomial_capped(a, subset_size, kExhaustiveSubsetLimit);
  if (total <= kExhaustiveSubsetLimit) {
    report.exhaustive = true;
    // Lexicographic k-combinations of 0..a-1.
    std::vector<Vertex> idx(subset_size);
    std::iota(idx.begin(), idx.end(), Vertex{0});
    if (subset_size == 0) {
      check(idx);
      return report;
    }
    while (true) {
      check(idx);
      std::size_t i = subset_size;
      while (i > 0 && idx[i - 1] == a - subset_size + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < subset_size; ++j) idx[j] = idx[j - 1] + 1;
    }
    return report;
  }

  std::vector<Vertex> pool(a);
  std::iota(pool.begin(), pool.end(), Vertex{0});
  for (std::size_t t = 0; t < samples; ++t) {
    for (std::size_t i = 0; i < subset_size; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(a - i));
      std::swap(pool[i], pool[j]);
    }
    check(std::span<const Vertex>(pool.data(), subset_size));
  }
  return report;
}

struct KrivelevichOptions {
  std::size_t restarts = 8;
  std::size_t verify_samples = 2000;
};

struct KrivelevichResult {
  Graph graph;
  KrivelevichReport report;
};

/// Subset size used by the layered construction for a layer of a vertices:
/// max(s - 2, ceil(a / ln^3 a)).
inline std::size_t krivelevich_subset_size(std::size_t a, std::size_t s) {
  const std::size_t floor_size = std::min(a, s - 2);
  if (a < 3) return std::max<std::size_t>(floor_size, std::min<std::size_t>(a, 1));
  const double l = std::log(static_cast<double>(a));
  const auto target = static_cast<std::size_t>(std::ceil(static_cast<double>(a) / (l * l * l)));
  return std::min(a, std::max(floor_size, target));
}

/// For s = 3 the answer is forced: the empty graph. For s >= 4, repeated
/// random-order greedy K_{s-1}-free subgraphs of g_a; the restart with the
/// fewest verifier failures (ties: more edges) is kept.
inline KrivelevichResult krivelevich_subgraph(const Graph& g_a, std::size_t s, std::size_t subset_size, Rng& rng,
                                              const KrivelevichOptions& options = {}) {
  if (s < 3) throw std::invalid_argument("krivelevich_subgraph: need s >= 3");
  const std::size_t a = g_a.vertex_count();
  subset_size = std::min(subset_size, a);
  if (s == 3 || a == 0) {
    Graph empty(a);
    Rng verify_rng(rng(), 0);
    return {empty, verify_krivelevich(empty, s, subset_size, std::max<std::size_t>(1, options.verify_samples), verify_rng)};
  }

  const std::vector<Edge> edges = g_a.edges();
  std::optional<KrivelevichResult> best;
  const std::uint64_t verify_seed = rng();
  for (std::size_t attempt = 0; attempt < std::max<std::size_t>(1, options.restarts); ++attempt) {
    std::vector<Edge> order = edges;
    rng.shuffle(std::span<Edge>(order));
    Graph h(a);
    CompletionChecker would_close(h, s - 1);
    for (const Edge& e : order)
      if (!would_close.completes(e.u, e.v)) h.add_edge(e.u, e.v);

    Rng verify_rng(verify_seed, 0);
    KrivelevichReport report =
        verify_krivelevich(h, s, subset_size, std::max<std::size_t>(1, options.verify_samples), verify_rng);
    const bool better = !best || report.failures < best->report.failures ||
                        (report.failures == best->report.failures && h.edge_count() > best->graph.edge_count());
    if (better) best = KrivelevichResult{std::move(h), report};
    if (best->report.passed()) break;
  }
  return std::move(*best);
}

}  // namespace satlab

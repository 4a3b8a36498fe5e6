#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "naive.hpp"
#include "satlab/edgecover.hpp"
#include "satlab/krivelevich.hpp"
#include "satlab/layered.hpp"
#include "satlab/saturation.hpp"

using namespace satlab;

namespace {

Graph star(std::size_t n) {
  Graph g(n);
  for (Vertex v = 1; v < n; ++v) g.add_edge(0, v);
  return g;
}

Graph random_subgraph(const Graph& g, double keep, Rng& rng) {
  Graph h(g.vertex_count());
  g.for_each_edge([&](Vertex u, Vertex v) {
    if (rng.bernoulli(keep)) h.add_edge(u, v);
  });
  return h;
}

std::set<std::vector<Edge>> edge_sets(const std::vector<Graph>& gs) {
  std::set<std::vector<Edge>> out;
  for (const Graph& g : gs) out.insert(g.edges());
  return out;
}

}  // namespace

TEST(CompletesPair, Examples) {
  EXPECT_TRUE(completes_pair(star(3), 1, 2, 3));
  EXPECT_FALSE(completes_pair(Graph(5), 0, 1, 3));
  Graph k4 = complete_graph(4);
  k4.remove_edge(0, 1);
  EXPECT_TRUE(completes_pair(k4, 0, 1, 4));
  EXPECT_FALSE(completes_pair(k4, 0, 1, 5));
}

TEST(CompletesPair, Rejections) {
  EXPECT_THROW(completes_pair(star(3), 0, 1, 3), std::invalid_argument);
  EXPECT_THROW(completes_pair(star(3), 1, 1, 3), std::invalid_argument);
  EXPECT_THROW(completes_pair(star(3), 1, 2, 2), std::invalid_argument);
}

TEST(CompletesPair, MatchesCliqueInCommonNeighbourhood) {
  Rng rng(1, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 5 + rng.below(36);  // up to 40
    const Graph h = gnp_generate(n, 0.3 + 0.5 * rng.uniform01(), rng);
    const std::size_t s = 3 + rng.below(3);
    for (int q = 0; q < 20; ++q) {
      const auto u = static_cast<Vertex>(rng.below(n));
      const auto v = static_cast<Vertex>(rng.below(n));
      if (u == v || h.has_edge(u, v)) continue;
      ASSERT_EQ(completes_pair(h, u, v, s), find_clique(h, common_neighbors(h, u, v), s - 2).has_value());
    }
  }
}

TEST(CompletesPair, MatchesBruteForce) {
  Rng rng(2, 0);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 5 + rng.below(6);
    const Graph h = gnp_generate(n, 0.6, rng);
    const auto adj = naive::Adj::of(h);
    for (std::size_t s = 3; s <= 5; ++s)
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
          if (!h.has_edge(u, v)) {
            ASSERT_EQ(completes_pair(h, u, v, s), naive::completes(adj, u, v, s));
          }
  }
}

TEST(CompletesPair, MonotoneUnderAddingEdges) {
  Rng rng(3, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 8 + rng.below(20);
    const Graph big = gnp_generate(n, 0.6, rng);
    const Graph small = random_subgraph(big, 0.6, rng);
    const std::size_t s = 3 + rng.below(2);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (!big.has_edge(u, v) && completes_pair(small, u, v, s)) {
          ASSERT_TRUE(completes_pair(big, u, v, s));
        }
  }
}

TEST(IsKsSaturated, Examples) {
  const Graph k3 = complete_graph(3);
  const SaturationReport r1 = is_ks_saturated(k3, k3, 3);
  EXPECT_FALSE(r1.is_ks_free);
  ASSERT_TRUE(r1.ks_witness.has_value());
  EXPECT_EQ(r1.ks_witness->size(), 3u);
  EXPECT_TRUE(r1.incomplete_edges.empty());
  EXPECT_FALSE(r1.is_saturated());

  const SaturationReport r2 = is_ks_saturated(star(5), complete_graph(5), 3);
  EXPECT_TRUE(r2.is_saturated());
  EXPECT_EQ(r2.missing_edges, 6u);

  EXPECT_TRUE(is_ks_saturated(cycle_graph(5), cycle_graph(5), 3).is_saturated());
  EXPECT_THROW(is_ks_saturated(complete_graph(3), star(3), 3), std::invalid_argument);
}

TEST(IsKsSaturated, IncompleteEdgesMatchBruteForce) {
  Rng rng(4, 0);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 5 + rng.below(6);
    const Graph g = gnp_generate(n, 0.7, rng);
    const Graph h = random_subgraph(g, 0.5, rng);
    const auto gh = naive::Adj::of(h);
    for (std::size_t s = 3; s <= 4; ++s) {
      const SaturationReport r = is_ks_saturated(h, g, s);
      std::vector<Edge> expect;
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
          if (g.has_edge(u, v) && !h.has_edge(u, v) && !naive::completes(gh, u, v, s)) expect.push_back({u, v});
      ASSERT_EQ(r.incomplete_edges, expect);
      ASSERT_EQ(r.is_ks_free, !naive::has_clique(gh, s));
      ASSERT_EQ(r.is_saturated(), naive::is_saturated(gh, naive::Adj::of(g), s));
    }
  }
}

TEST(MaximalExtension, Examples) {
  Rng rng(5, 0);
  const Graph path = maximal_ks_free_extension(Graph(3), complete_graph(3), 3, rng);
  EXPECT_EQ(path.edge_count(), 2u);

  const Graph c5 = cycle_graph(5);
  EXPECT_EQ(maximal_ks_free_extension(c5, c5, 3, rng), c5);

  EXPECT_THROW(maximal_ks_free_extension(complete_graph(3), complete_graph(3), 3, rng), std::invalid_argument);
}

TEST(MaximalExtension, OutputsAreExactlyTheBruteForceMaximalSubgraphs) {
  const Graph k5 = complete_graph(5);
  const auto truth = edge_sets(naive::maximal_free(k5, 3));
  std::set<std::size_t> sizes;
  for (const auto& e : truth) sizes.insert(e.size());
  EXPECT_EQ(sizes, (std::set<std::size_t>{4, 5, 6}));
  Rng rng(6, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph h = maximal_ks_free_extension(Graph(5), k5, 3, rng);
    ASSERT_TRUE(truth.count(h.edges())) << "not a maximal triangle-free subgraph";
  }
}

TEST(MaximalExtension, SaturatedOnRandomInstances) {
  Rng rng(7, 0);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 10 + rng.below(50);
    const std::size_t s = 3 + rng.below(3);
    const Graph g = gnp_generate(n, 0.5, rng);
    Graph h(n);
    const Graph out = maximal_ks_free_extension(h, g, s, rng);
    const SaturationReport r = is_ks_saturated(out, g, s);
    ASSERT_TRUE(r.is_saturated());
    ASSERT_TRUE(out.is_subgraph_of(g));
  }
}

TEST(Naive, Examples) {
  Rng rng(8, 0);
  const NaiveConstruction kn = naive_sequential_construction(complete_graph(12), rng);
  EXPECT_EQ(kn.picked.size(), 1u);
  EXPECT_EQ(kn.graph.edge_count(), 11u);
  const NaiveConstruction empty = naive_sequential_construction(Graph(9), rng);
  EXPECT_EQ(empty.graph.edge_count(), 0u);
  EXPECT_TRUE(empty.picked.empty());
}

TEST(Naive, SaturatedAndBipartiteStructure) {
  Rng rng(9, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 20 + rng.below(100);
    const Graph g = gnp_generate(n, 0.5, rng);
    const NaiveConstruction out = naive_sequential_construction(g, rng);
    ASSERT_TRUE(is_ks_saturated(out.graph, g, 3).is_saturated());
    EXPECT_EQ(out.graph.edge_count(), out.bipartite_edges + out.extension_edges);
  }
}

TEST(Naive, RandomGraphScale) {
  const std::size_t n = 2000;
  const double target = std::log(n * (n - 1) / 2.0) / std::log(4.0 / 3.0);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    Rng rng(seed, 0);
    const Graph g = gnp_generate(n, 0.5, rng);
    const NaiveConstruction out = naive_sequential_construction(g, rng);
    const auto k = static_cast<double>(out.picked.size());
    EXPECT_GE(k, target / 2);
    EXPECT_LE(k, target * 2);
    const double expect = 0.5 * k * (static_cast<double>(n) - k);
    EXPECT_NEAR(static_cast<double>(out.bipartite_edges), expect, 0.05 * expect);
    EXPECT_TRUE(is_ks_saturated(out.graph, g, 3).is_saturated());
  }
}

TEST(EscapeVertices, Examples) {
  const Graph c = cycle_graph(6);
  EXPECT_EQ(escape_vertices(c, 0, VertexSet(6)), c.neighbors(0));
  EXPECT_TRUE(escape_vertices(complete_graph(6), 0, VertexSet(6, {3})).empty());
  EXPECT_THROW(escape_vertices(c, 0, VertexSet(6, {0})), std::invalid_argument);
}

TEST(EscapeVertices, MatchesDefinitionAndBinomial) {
  const std::size_t n = 3000;
  const Graph g = gnp_generate(n, 0.5, RngHandle{10, 0});
  Rng rng(10, 1);
  const double q = 0.5 * std::pow(0.5, 8);
  const double mean = static_cast<double>(n - 9) * q;
  const double sigma = std::sqrt(static_cast<double>(n - 9) * q * (1 - q));
  for (int trial = 0; trial < 20; ++trial) {
    VertexSet qs(n);
    while (qs.size() < 9) qs.insert(static_cast<Vertex>(rng.below(n)));
    const Vertex x = *qs.first();
    qs.erase(x);
    const VertexSet esc = escape_vertices(g, x, qs);
    esc.for_each([&](Vertex w) {
      ASSERT_TRUE(g.has_edge(x, w));
      qs.for_each([&](Vertex z) { ASSERT_FALSE(g.has_edge(w, z)); });
    });
    for (Vertex w = 0; w < n; ++w) {
      if (w == x || qs.contains(w) || !g.has_edge(x, w)) continue;
      bool free = true;
      qs.for_each([&](Vertex z) { free = free && !g.has_edge(w, z); });
      ASSERT_EQ(esc.contains(w), free);
    }
    EXPECT_NEAR(static_cast<double>(esc.size()), mean, 5 * sigma);
  }
}

TEST(LowerBound, HandPoints) {
  const long double n16 = 65536.0L;
  EXPECT_EQ(lower_bound_value(n16, 0.5), -8.0L * n16);
  const long double big = std::ldexp(1.0L, 1024);
  EXPECT_GT(lower_bound_value(big, 0.5), 0.0L);
  // n = 2^1024: n (1024 - 6 log2 1024) = 964 n
  EXPECT_NEAR(static_cast<double>(lower_bound_value(big, 0.5) / big), 964.0, 964.0 * 1e-9);
  // p = 3/4 (alpha = 4), n = 4^8: n (8 - 6 log4 8) = n (8 - 9) = -n
  const long double n48 = 65536.0L;
  EXPECT_NEAR(static_cast<double>(lower_bound_value(n48, 0.75) / n48), -1.0, 1e-9);
  // alpha grows, both terms shrink
  EXPECT_LT(std::fabs(static_cast<double>(lower_bound_value(1000.0L, 0.999999))), 1000.0);
  EXPECT_THROW(lower_bound_value(10.0L, 1.0), std::invalid_argument);
}

TEST(DefaultParams, FormulaEvaluation) {
  const ConstructionParams p = default_params(1'000'000, 0.5, 3);
  const double l = std::log2(1e6);
  EXPECT_EQ(p.a1, static_cast<std::size_t>(std::ceil(2.0 * (1.0 + 3.0 / std::log(l)) * l)));
  EXPECT_EQ(p.a1, 80u);
  const double lb = std::log(1e6) / std::log(4.0 / 3.0);
  const double pairs = 1e6 * (1e6 - 1) / 2;
  const auto a2 =
      static_cast<std::size_t>(std::ceil((1.0 + 2.0 / std::log(lb)) * std::log(pairs) / std::log(4.0 / 3.0)));
  EXPECT_EQ(p.a2, a2);
  EXPECT_EQ(p.a3, static_cast<std::size_t>(std::ceil(a2 / std::sqrt(std::log(static_cast<double>(a2))))));
  EXPECT_DOUBLE_EQ(p.alpha, 2.0);
  EXPECT_DOUBLE_EQ(p.beta, 4.0 / 3.0);
}

TEST(DefaultParams, Errors) {
  EXPECT_THROW(default_params(10, 0.5, 3), ParamsError);
  EXPECT_THROW(default_params(99, 0.5, 3), ParamsError);
  EXPECT_THROW(default_params(1000, 0.0, 3), ParamsError);
  EXPECT_THROW(default_params(1000, 0.5, 2), ParamsError);
  EXPECT_THROW(validate_params(make_params(0.5, 100, 100, 100), 500), ParamsError);
  EXPECT_THROW(validate_params(make_params(0.5, 0, 1, 1), 500), ParamsError);
}

TEST(DefaultParams, MonotoneInP) {
  EXPECT_LT(default_params(100000, 0.9, 3).a1, default_params(100000, 0.5, 3).a1);
}

TEST(DefaultParams, B2ThresholdAtDefaultA1) {
  const std::size_t n = 50000;
  const double l = std::log2(static_cast<double>(n));
  const double unrounded_a1 = 2.0 * (1.0 + 3.0 / std::log(l)) * l;
  const double threshold = 0.5 * unrounded_a1 - l / std::log(l);
  EXPECT_NEAR(threshold, (1.0 + 2.0 / std::log(l)) * l, 1e-9);
  EXPECT_NEAR(b2_threshold(n, 0.5, 40), 20.0 - l / std::log(l), 1e-12);
}

TEST(CompactParams, Formula) {
  const ConstructionParams p = compact_params(4000, 0.5, 3);
  const double l = std::log2(4000.0);
  EXPECT_EQ(p.a1, static_cast<std::size_t>(std::ceil(2.0 * (1.0 + 1.0 / std::log(l)) * l)));
  EXPECT_EQ(p.a2, static_cast<std::size_t>(std::ceil(std::log2(l))));
  EXPECT_EQ(p.a3, p.a2);
  EXPECT_THROW(compact_params(50, 0.5, 3), ParamsError);
}

TEST(Krivelevich, TriangleCaseIsEmpty) {
  Rng rng(11, 0);
  const KrivelevichResult r = krivelevich_subgraph(complete_graph(20), 3, 5, rng);
  EXPECT_EQ(r.graph.edge_count(), 0u);
  EXPECT_TRUE(r.report.passed());
}

TEST(Krivelevich, VerifierExamples) {
  Rng rng(12, 0);
  const KrivelevichReport k3 = verify_krivelevich(Graph(10), 3, 4, 50, rng);
  EXPECT_EQ(k3.failures, 0u);
  EXPECT_TRUE(k3.passed());
  const KrivelevichReport empty = verify_krivelevich(Graph(10), 4, 3, 50, rng);
  EXPECT_TRUE(empty.exhaustive);
  EXPECT_EQ(empty.failures, empty.checked);
  EXPECT_EQ(empty.checked, naive::binomial(10, 3));
  EXPECT_THROW(verify_krivelevich(Graph(4), 4, 5, 10, rng), std::invalid_argument);
  EXPECT_FALSE(verify_krivelevich(complete_graph(4), 4, 2, 10, rng).ks1_free);
}

TEST(Krivelevich, NoTriangleFreeGraphOnSixVerticesAvoidsIndependentTriples) {
  // Brute force over all 2^15 subgraphs of K_6: every triangle-free one has
  // an independent 3-set, so no valid output exists for (K_6, s = 4, 3).
  const Graph k6 = complete_graph(6);
  const auto adj = naive::Adj::of(k6);
  const auto e = naive::edges(adj);
  std::size_t triangle_free = 0;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << e.size()); ++pick) {
    const naive::Adj h = naive::subgraph(adj, e, pick);
    if (naive::has_clique(h, 3)) continue;
    ++triangle_free;
    naive::Adj comp(6);
    for (std::size_t u = 0; u < 6; ++u)
      for (std::size_t v = u + 1; v < 6; ++v) comp.set(u, v, !h.m[u][v]);
    ASSERT_TRUE(naive::has_clique(comp, 3));
  }
  EXPECT_GT(triangle_free, 0u);
  Rng rng(13, 0);
  EXPECT_FALSE(krivelevich_subgraph(k6, 4, 3, rng).report.passed());
}

TEST(Krivelevich, FiveCycleInsideK5) {
  const Graph c5 = cycle_graph(5);
  Rng rng(14, 0);
  const KrivelevichReport r = verify_krivelevich(c5, 4, 3, 10, rng);
  EXPECT_TRUE(r.exhaustive);
  EXPECT_TRUE(r.passed());
  KrivelevichOptions options;
  options.restarts = 64;
  std::size_t passed = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng g(seed, 0);
    const KrivelevichResult out = krivelevich_subgraph(complete_graph(5), 4, 3, g, options);
    ASSERT_FALSE(has_clique(out.graph, 3));
    if (out.report.passed()) {
      ++passed;
      EXPECT_EQ(out.graph.edge_count(), 5u);
    }
  }
  EXPECT_GE(passed, 9u);
}

TEST(Krivelevich, RandomHostSampledVerification) {
  std::size_t passed = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed, 0);
    const Graph g = gnp_generate(300, 0.5, rng);
    const KrivelevichResult out = krivelevich_subgraph(g, 4, 40, rng);
    ASSERT_TRUE(out.graph.is_subgraph_of(g));
    ASSERT_TRUE(out.report.ks1_free);
    if (out.report.passed()) ++passed;
  }
  EXPECT_GE(passed, 8u);
}

TEST(Layered, PartitionInvariants) {
  const std::size_t n = 1000;
  Rng rng(15, 0);
  const Graph g = gnp_generate(n, 0.5, rng);
  const LayeredResult r = layered_construction(g, 0.5, 3, default_params(n, 0.5, 3), rng);
  const LayeredPartition& P = r.partition;
  EXPECT_FALSE(P.a1.intersects(P.a2));
  EXPECT_FALSE(P.a1.intersects(P.a3));
  EXPECT_FALSE(P.a2.intersects(P.a3));
  EXPECT_FALSE(P.b1.intersects(P.a1 | P.a2 | P.a3));
  EXPECT_EQ((P.a1 | P.a2 | P.a3 | P.b1).size(), n);
  EXPECT_TRUE(P.b2.is_subset_of(P.b1));
  EXPECT_EQ(P.b3, P.b1 - P.b2);
  EXPECT_EQ(P.a2_classes.size(), r.diagnostics.params.k);
  EXPECT_EQ(P.a3_parts.size(), r.diagnostics.params.k);
  const ConstructionParams& cp = r.diagnostics.params;
  EXPECT_GE(cp.a4, 1u);
  EXPECT_EQ(cp.a4, std::max<std::size_t>(1, cp.a3 / (2 * cp.k)));
  P.b1.for_each([&](Vertex v) {
    const double deg = static_cast<double>(bits::and_popcount(g.row(v), P.a1.words()));
    ASSERT_EQ(P.b2.contains(v), deg < r.diagnostics.b2_threshold);
  });
  EXPECT_TRUE(r.glued.is_subgraph_of(r.graph));
  EXPECT_TRUE(r.graph.is_subgraph_of(g));
}

TEST(Layered, SaturatedAndGluedUnionFree) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    Rng rng(seed, 0);
    const std::size_t n = 600 + 200 * seed;
    const Graph g = gnp_generate(n, 0.5, rng);
    const LayeredResult r = layered_construction(g, 0.5, 3, default_params(n, 0.5, 3), rng);
    EXPECT_TRUE(r.diagnostics.glued_ks_free);
    EXPECT_TRUE(is_ks_free(r.glued, 3));
    EXPECT_TRUE(r.report.is_saturated());
    EXPECT_TRUE(is_ks_saturated(r.graph, g, 3).is_saturated());
  }
}

TEST(Layered, FourCliqueVersion) {
  for (std::uint64_t seed = 0; seed < 2; ++seed) {
    Rng rng(seed, 0);
    const std::size_t n = 400;
    const Graph g = gnp_generate(n, 0.5, rng);
    const LayeredResult r = layered_construction(g, 0.5, 4, default_params(n, 0.5, 4), rng);
    EXPECT_TRUE(r.diagnostics.glued_ks_free);
    EXPECT_TRUE(is_ks_free(r.glued, 4));
    EXPECT_TRUE(r.report.is_saturated());
  }
}

TEST(Layered, SeedSevenAtFourThousand) {
  Rng rng(7, 0);
  const std::size_t n = 4000;
  const Graph g = gnp_generate(n, 0.5, rng);
  const LayeredResult r = layered_construction(g, 0.5, 3, compact_params(n, 0.5, 3), rng);
  EXPECT_TRUE(r.report.is_saturated());
  const double ratio = static_cast<double>(r.graph.edge_count()) / (n * std::log2(static_cast<double>(n)));
  EXPECT_GE(ratio, 0.5);
  EXPECT_LE(ratio, 2.0);
}

TEST(Layered, B2IsSmall) {
  const std::size_t n = 4000;
  std::size_t ok = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed, 0);
    const Graph g = gnp_generate(n, 0.5, rng);
    const LayeredResult r = layered_construction(g, 0.5, 3, default_params(n, 0.5, 3), rng);
    if (static_cast<double>(r.partition.b2.size()) < n / std::log(static_cast<double>(n))) ++ok;
  }
  EXPECT_GE(ok, 8u);
}

TEST(Layered, RejectsTooFewA3Vertices) {
  Rng rng(16, 0);
  const Graph g = gnp_generate(400, 0.5, rng);
  EXPECT_THROW(layered_construction(g, 0.5, 3, make_params(0.5, 20, 40, 1), rng), ParamsError);
}

TEST(Edgecover, Examples) {
  Rng rng(17, 0);
  EXPECT_NEAR(edgecover_bound(30, 0.5), std::pow(0.75, 30.0 - 30.0 / std::log(30.0)), 1e-15);
  EXPECT_EQ(edgecover_experiment(30, 1.0, 3, 1000, rng).measured, 0.0);
  const EdgecoverResult zero = edgecover_experiment(30, 0.0, 3, 1000, rng);
  EXPECT_EQ(zero.measured, 1.0);
  EXPECT_EQ(zero.bound, 1.0);
  EXPECT_THROW(edgecover_bound(2, 0.5), std::invalid_argument);
  EXPECT_THROW(edgecover_experiment(2, 0.5, 3, 10, rng), std::invalid_argument);
}

TEST(Edgecover, TriangleBoundHolds) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    Rng rng(seed, 0);
    const EdgecoverResult r = edgecover_experiment(30, 0.5, 3, 10'000, rng);
    EXPECT_LE(r.measured, r.bound);
  }
}

#pragma once

// How many prescribed pairs a star layer of a vertices leaves incomplete.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "satlab/cliques.hpp"
#include "satlab/graph.hpp"
#include "satlab/krivelevich.hpp"
#include "satlab/rng.hpp"

namespace satlab {

/// (1 - p^2)^(a - a / ln a)
inline double edgecover_bound(std::size_t a, double p) {
  if (a < 3) throw std::invalid_argument("edgecover_bound: need a >= 3");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edgecover_bound: need 0 <= p <= 1");
  const auto ad = static_cast<double>(a);
  return std::pow(1.0 - p * p, ad - ad / std::log(ad));
}

/// ceil(a / ln^2 a), the subset size the inner graph must cover.
inline std::size_t edgecover_subset_size(std::size_t a) {
  const double l = std::log(static_cast<double>(a));
  return std::min<std::size_t>(a, static_cast<std::size_t>(std::ceil(static_cast<double>(a) / (l * l))));
}

struct EdgecoverResult {
  double measured = 0.0;  // incomplete / num_pairs
  std::size_t incomplete = 0;
  std::size_t num_pairs = 0;
  double bound = 0.0;
  KrivelevichReport inner;  // verification of G_A[A]
  std::size_t inner_edges = 0;
};

/// Monte Carlo estimate. G_A[A] is krivelevich_subgraph of a G(a, p) sample;
/// each pair {u, v} gets fresh Bernoulli(p) edges to A on both endpoints and
/// counts as incomplete when its common A-neighbourhood spans no K_{s-2} in
/// G_A[A]. Pairs never share endpoints, so their outcomes are independent.
inline EdgecoverResult edgecover_experiment(std::size_t a, double p, std::size_t s, std::size_t num_pairs, Rng& rng,
                                            const KrivelevichOptions& options = {}) {
  if (a < 3) throw std::invalid_argument("edgecover_experiment: need a >= 3");
  if (s < 3) throw std::invalid_argument("edgecover_experiment: need s >= 3");
  if (num_pairs == 0) throw std::invalid_argument("edgecover_experiment: need num_pairs >= 1");
  EdgecoverResult out;
  out.bound = edgecover_bound(a, p);
  out.num_pairs = num_pairs;

  const Graph inner_host = gnp_generate(a, p, rng);
  KrivelevichResult inner = krivelevich_subgraph(inner_host, s, edgecover_subset_size(a), rng, options);
  out.inner = inner.report;
  out.inner_edges = inner.graph.edge_count();

  const std::size_t stride = words_for(a);
  std::vector<Word> nu(stride);
  std::vector<Word> nv(stride);
  detail::CliqueSearch search(inner.graph, s - 2);
  for (std::size_t t = 0; t < num_pairs; ++t) {
    std::fill(nu.begin(), nu.end(), 0);
    std::fill(nv.begin(), nv.end(), 0);
    for (std::size_t i = 0; i < a; ++i)
      if (rng.bernoulli(p)) bits::set(nu, i);
    for (std::size_t i = 0; i < a; ++i)
      if (rng.bernoulli(p)) bits::set(nv, i);
    for (std::size_t i = 0; i < stride; ++i) nu[i] &= nv[i];
    if (!search.run(nu, s - 2)) ++out.incomplete;
  }
  out.measured = static_cast<double>(out.incomplete) / static_cast<double>(num_pairs);
  return out;
}

}  // namespace satlab

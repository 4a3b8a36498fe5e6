#pragma once

// Pseudorandomness properties behind the weak saturation result.
//
//   P1(t, gamma): every X with |X| <= t has, for every 1 <= y <= t, at least
//                 gamma n pairwise disjoint clique extensions of size y.
//   P2(t, gamma): any disjoint S, T of size gamma n / 2 admit v in T and a
//                 (t-1)-clique X in S with X + v a clique.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "satlab/cliques.hpp"
#include "satlab/graph.hpp"
#include "satlab/krivelevich.hpp"
#include "satlab/rng.hpp"

namespace satlab {

/// p^C(2t, 2) / (4t). Far too small to be checkable at laptop scale; the
/// checkers take gamma as a free parameter.
inline double gamma_constant(double p, std::size_t t) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("gamma_constant: need 0 < p <= 1");
  if (t < 1) throw std::invalid_argument("gamma_constant: need t >= 1");
  const auto pairs = static_cast<double>(2 * t) * static_cast<double>(2 * t - 1) / 2.0;
  return std::pow(p, pairs) / (4.0 * static_cast<double>(t));
}

enum class CheckMode { kExhaustive, kSampled };

inline constexpr std::uint64_t kP1ExhaustiveLimit = 10'000'000;

struct P1Violation {
  VertexSet x;
  std::size_t y = 0;
  std::size_t found = 0;
};

struct GoodnessReport {
  bool passed = true;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::size_t required = 0;  // extensions (P1) or set size (P2)
  std::optional<P1Violation> first_violation;  // P1 only
};

namespace detail {

inline std::size_t ceil_gamma_n(double gamma, std::size_t n) {
  return static_cast<std::size_t>(std::ceil(gamma * static_cast<double>(n) - 1e-12));
}

}  // namespace detail

/// Exhaustive mode visits every X with |X| <= t and every y in 1..t; it is
/// refused when sum_{x <= t} C(n, x) exceeds 10^7. Sampled mode draws
/// `samples` pairs (X, y) with |X| uniform in 0..t and y uniform in 1..t.
inline GoodnessReport check_p1(const Graph& g, std::size_t t, double gamma, CheckMode mode, Rng& rng,
                               std::size_t samples = 200) {
  const std::size_t n = g.vertex_count();
  if (t < 1 || t > n) throw std::invalid_argument("check_p1: need 1 <= t <= n");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("check_p1: need 0 < gamma <= 1");
  GoodnessReport report;
  report.required = detail::ceil_gamma_n(gamma, n);

  auto check = [&](const VertexSet& x, std::size_t y) {
    ++report.checked;
    const std::size_t found = disjoint_clique_extensions(g, x, y, report.required).size();
    if (found < report.required) {
      ++report.failures;
      report.passed = false;
      if (!report.first_violation) report.first_violation = P1Violation{x, y, found};
    }
  };

  if (mode == CheckMode::kExhaustive) {
    std::uint64_t total = 0;
    for (std::size_t x = 0; x <= t; ++x) {
      total += binomial_capped(n, x, kP1ExhaustiveLimit);
      if (total > kP1ExhaustiveLimit) throw std::invalid_argument("check_p1: exhaustive mode exceeds 10^7 sets X");
    }
    for (std::size_t size = 0; size <= t; ++size) {
      std::vector<Vertex> idx(size);
      std::iota(idx.begin(), idx.end(), Vertex{0});
      while (true) {
        const VertexSet x(n, std::span<const Vertex>(idx));
        for (std::size_t y = 1; y <= t; ++y) check(x, y);
        std::size_t i = size;
        while (i > 0 && idx[i - 1] == n - size + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
    return report;
  }

  std::vector<Vertex> pool(n);
  std::iota(pool.begin(), pool.end(), Vertex{0});
  for (std::size_t k = 0; k < samples; ++k) {
    const auto size = static_cast<std::size_t>(rng.below(t + 1));
    const auto y = 1 + static_cast<std::size_t>(rng.below(t));
    for (std::size_t i = 0; i < size; ++i) std::swap(pool[i], pool[i + static_cast<std::size_t>(rng.below(n - i))]);
    check(VertexSet(n, std::span<const Vertex>(pool.data(), size)), y);
  }
  return report;
}

/// Samples disjoint S, T of size ceil(gamma n / 2) and searches each v in T
/// for a (t-1)-clique among its neighbours in S.
inline GoodnessReport check_p2(const Graph& g, std::size_t t, double gamma, std::size_t samples, Rng& rng) {
  const std::size_t n = g.vertex_count();
  if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("check_p2: need 0 < gamma <= 1");
  if (t < 1) throw std::invalid_argument("check_p2: need t >= 1");
  const std::size_t size = detail::ceil_gamma_n(gamma / 2.0, n);
  if (size < t) throw std::invalid_argument("check_p2: ceil(gamma n / 2) must be at least t");
  if (2 * size > n) throw std::invalid_argument("check_p2: two disjoint sets of size ceil(gamma n / 2) do not fit");

  GoodnessReport report;
  report.required = size;
  std::vector<Vertex> pool(n);
  std::iota(pool.begin(), pool.end(), Vertex{0});
  detail::CliqueSearch search(g, t - 1);
  std::vector<Word> cand(g.words_per_row());
  for (std::size_t k = 0; k < samples; ++k) {
    for (std::size_t i = 0; i < 2 * size; ++i)
      std::swap(pool[i], pool[i + static_cast<std::size_t>(rng.below(n - i))]);
    const VertexSet s_set(n, std::span<const Vertex>(pool.data(), size));
    bool ok = false;
    for (std::size_t i = size; i < 2 * size && !ok; ++i) {
      bits::assign_and(cand, g.row(pool[i]), s_set.words());
      ok = search.run(cand, t - 1);
    }
    ++report.checked;
    if (!ok) {
      ++report.failures;
      report.passed = false;
    }
  }
  return report;
}

}  // namespace satlab

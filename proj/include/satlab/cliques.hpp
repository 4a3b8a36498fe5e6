#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "satlab/graph.hpp"
#include "satlab/vertex_set.hpp"

namespace satlab {

namespace detail {

// Exact r-clique search over bitset candidate sets. Branches on the lowest
// candidate, removes it afterwards, and prunes with the popcount bound and a
// greedy-colouring bound (a clique needs one vertex per colour class).
class CliqueSearch {
 public:
  CliqueSearch(const Graph& g, std::size_t r) : g_(g), stride_(g.words_per_row()), levels_((r + 1) * stride_) {
    scratch_.resize(2 * stride_);
    chosen_.reserve(r);
  }

  bool run(std::span<const Word> candidates, std::size_t r) {
    auto top = level(0);
    std::copy(candidates.begin(), candidates.end(), top.begin());
    chosen_.clear();
    return expand(0, r);
  }

  const std::vector<Vertex>& chosen() const { return chosen_; }
  std::size_t nodes() const { return nodes_; }

 private:
  std::span<Word> level(std::size_t d) { return {levels_.data() + d * stride_, stride_}; }

  std::size_t colour_bound(std::span<const Word> p, std::size_t stop_at) {
    std::span<Word> uncoloured{scratch_.data(), stride_};
    std::span<Word> cls{scratch_.data() + stride_, stride_};
    std::copy(p.begin(), p.end(), uncoloured.begin());
    std::size_t colours = 0;
    while (bits::any(uncoloured)) {
      if (++colours >= stop_at) return colours;
      std::copy(uncoloured.begin(), uncoloured.end(), cls.begin());
      while (auto v = bits::first(cls)) {
        bits::reset(uncoloured, *v);
        auto nb = g_.row(static_cast<Vertex>(*v));
        for (std::size_t i = 0; i < stride_; ++i) cls[i] &= ~nb[i];
        bits::reset(cls, *v);
      }
    }
    return colours;
  }

  bool expand(std::size_t depth, std::size_t need) {
    ++nodes_;
    if (need == 0) return true;
    auto p = level(depth);
    if (bits::popcount(p) < need) return false;
    if (need == 1) {
      chosen_.push_back(static_cast<Vertex>(*bits::first(p)));
      return true;
    }
    if (need >= 3 && colour_bound(p, need) < need) return false;
    while (auto v = bits::first(p)) {
      bits::reset(p, *v);
      auto q = level(depth + 1);
      bits::assign_and(q, p, g_.row(static_cast<Vertex>(*v)));
      chosen_.push_back(static_cast<Vertex>(*v));
      if (expand(depth + 1, need - 1)) return true;
      chosen_.pop_back();
      if (bits::popcount(p) < need) return false;
    }
    return false;
  }

  const Graph& g_;
  std::size_t stride_;
  std::vector<Word> levels_;
  std::vector<Word> scratch_;
  std::vector<Vertex> chosen_;
  std::size_t nodes_ = 0;
};

}  // namespace detail

/// An r-subset of `within` inducing a complete subgraph of g, or nullopt if
/// none exists. Exact.
inline std::optional<VertexSet> find_clique(const Graph& g, const VertexSet& within, std::size_t r) {
  const std::size_t n = g.vertex_count();
  if (within.universe() != n) throw std::invalid_argument("find_clique: vertex set universe mismatch");
  if (r == 0) return VertexSet(n);
  if (r > n) return std::nullopt;
  detail::CliqueSearch search(g, r);
  if (!search.run(within.words(), r)) return std::nullopt;
  return VertexSet(n, std::span<const Vertex>(search.chosen()));
}

inline std::optional<VertexSet> find_clique(const Graph& g, std::size_t r) {
  return find_clique(g, VertexSet::full(g.vertex_count()), r);
}

inline bool has_clique(const Graph& g, std::size_t r) { return find_clique(g, r).has_value(); }

inline bool is_clique(const Graph& g, const VertexSet& s) {
  bool ok = true;
  s.for_each([&](Vertex v) {
    VertexSet rest = s;
    rest.erase(v);
    VertexSet nb = g.neighbors(v);
    if (!rest.is_subset_of(nb)) ok = false;
  });
  return ok;
}

/// y is a clique extension of x: disjoint from x, g[y] complete, g[x, y]
/// complete bipartite.
inline bool is_clique_extension(const Graph& g, const VertexSet& x, const VertexSet& y) {
  if (x.intersects(y) || !is_clique(g, y)) return false;
  return y.is_subset_of(common_neighborhood(g, x));
}

/// Greedy packing of pairwise-disjoint clique extensions of x of size y,
/// stopping once max_count have been found or none remains.
inline std::vector<VertexSet> disjoint_clique_extensions(const Graph& g, const VertexSet& x, std::size_t y,
                                                         std::size_t max_count) {
  std::vector<VertexSet> out;
  if (y == 0) {
    out.assign(max_count, VertexSet(g.vertex_count()));
    return out;
  }
  VertexSet pool = common_neighborhood(g, x);
  while (out.size() < max_count) {
    auto ext = find_clique(g, pool, y);
    if (!ext) break;
    pool -= *ext;
    out.push_back(std::move(*ext));
  }
  return out;
}

}  // namespace satlab

#pragma once

// Exhaustive ground truth for tiny hosts: sat(G, K_s) and w-sat(G, K_s).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "satlab/cliques.hpp"
#include "satlab/graph.hpp"
#include "satlab/saturation.hpp"
#include "satlab/weak_saturation.hpp"

namespace satlab {

struct OracleOptions {
  std::size_t max_edges_sat = 24;
  std::size_t max_edges_wsat = 18;
  std::uint64_t max_nodes = 0;  // 0 = unlimited; otherwise the search may stop early
};

struct OracleResult {
  std::size_t value = 0;
  Graph witness;
  std::uint64_t nodes_explored = 0;
  bool exhausted = false;  // value is exact only when true
};

class OracleBudgetError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void require_budget(const Graph& g, std::size_t limit, const char* who) {
  if (g.edge_count() > limit)
    throw OracleBudgetError(std::string(who) + ": host has " + std::to_string(g.edge_count()) +
                            " edges, budget is " + std::to_string(limit));
}

// Depth-first branching over host edges in lexicographic order, include
// before exclude. `optimistic` is the current graph plus all undecided
// edges; an excluded edge that optimistic does not complete can never be
// completed, which prunes the branch.
class MaximalFreeSearch {
 public:
  MaximalFreeSearch(const Graph& g, std::size_t s, std::uint64_t max_nodes)
      : g_(g), s_(s), edges_(g.edges()), cur_(g.vertex_count()), optimistic_(g), max_nodes_(max_nodes) {}

  // visit(graph) returns false to stop. bound(graph) may return false to skip
  // the subtree below the current partial graph.
  bool run(const std::function<bool(const Graph&)>& visit, const std::function<bool(const Graph&)>& bound) {
    visit_ = &visit;
    bound_ = &bound;
    stopped_ = false;
    exhausted_ = true;
    branch(0);
    return exhausted_ && !stopped_;
  }

  std::uint64_t nodes() const { return nodes_; }
  bool exhausted() const { return exhausted_; }

 private:
  bool excluded_all_completable() {
    CompletionChecker check(optimistic_, s_);
    for (const Edge& e : excluded_)
      if (!check.completes(e.u, e.v)) return false;
    return true;
  }

  void branch(std::size_t i) {
    if (stopped_) return;
    if (max_nodes_ && nodes_ >= max_nodes_) {
      exhausted_ = false;
      stopped_ = true;
      return;
    }
    ++nodes_;
    if (!(*bound_)(cur_)) return;
    if (i == edges_.size()) {
      if (!(*visit_)(cur_)) stopped_ = true;
      return;
    }
    const Edge e = edges_[i];
    if (!CompletionChecker(cur_, s_).completes(e.u, e.v)) {
      cur_.add_edge(e.u, e.v);
      branch(i + 1);
      cur_.remove_edge(e.u, e.v);
      if (stopped_) return;
    }
    optimistic_.remove_edge(e.u, e.v);
    excluded_.push_back(e);
    if (excluded_all_completable()) branch(i + 1);
    excluded_.pop_back();
    optimistic_.add_edge(e.u, e.v);
  }

  const Graph& g_;
  std::size_t s_;
  std::vector<Edge> edges_;
  Graph cur_;
  Graph optimistic_;
  std::vector<Edge> excluded_;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;
  bool stopped_ = false;
  bool exhausted_ = true;
  const std::function<bool(const Graph&)>* visit_ = nullptr;
  const std::function<bool(const Graph&)>* bound_ = nullptr;
};

}  // namespace detail

/// Calls visit(H) once for every maximal K_s-free subgraph H of g (spanning
/// all vertices), in a fixed deterministic order. visit returns false to stop.
inline void for_each_maximal_ks_free(const Graph& g, std::size_t s, const std::function<bool(const Graph&)>& visit,
                                     const OracleOptions& options = {}) {
  if (s < 3) throw std::invalid_argument("enumerate_maximal_ks_free: need s >= 3");
  detail::require_budget(g, options.max_edges_sat, "enumerate_maximal_ks_free");
  detail::MaximalFreeSearch search(g, s, options.max_nodes);
  search.run(visit, [](const Graph&) { return true; });
}

inline std::vector<Graph> enumerate_maximal_ks_free(const Graph& g, std::size_t s, const OracleOptions& options = {}) {
  std::vector<Graph> out;
  for_each_maximal_ks_free(
      g, s,
      [&](const Graph& h) {
        out.push_back(h);
        return true;
      },
      options);
  return out;
}

/// Minimum edge count of a K_s-saturated subgraph of g. The witness is the
/// minimiser with the lexicographically smallest sorted edge list.
inline OracleResult exact_sat(const Graph& g, std::size_t s, const OracleOptions& options = {}) {
  if (s < 3) throw std::invalid_argument("exact_sat: need s >= 3");
  detail::require_budget(g, options.max_edges_sat, "exact_sat");
  OracleResult best;
  best.value = std::numeric_limits<std::size_t>::max();
  detail::MaximalFreeSearch search(g, s, options.max_nodes);
  const bool complete = search.run(
      [&](const Graph& h) {
        if (h.edge_count() < best.value) {
          best.value = h.edge_count();
          best.witness = h;
        }
        return true;
      },
      [&](const Graph& partial) { return partial.edge_count() < best.value; });
  best.nodes_explored = search.nodes();
  best.exhausted = complete;
  return best;
}

/// Host edges lying in no K_s of g; closure can never add them back.
inline std::vector<Edge> edges_outside_every_ks(const Graph& g, std::size_t s) {
  std::vector<Edge> out;
  for (const Edge& e : g.edges()) {
    Graph without = g;
    without.remove_edge(e.u, e.v);
    if (!CompletionChecker(without, s).completes(e.u, e.v)) out.push_back(e);
  }
  return out;
}

/// Minimum edge count of a weakly K_s-saturated subgraph of g. Edges in no
/// K_s of g are forced; the remaining edges are searched by increasing subset
/// size in lexicographic order, so the first hit is the minimum with the
/// lexicographically smallest choice of optional edges.
inline OracleResult exact_wsat(const Graph& g, std::size_t s, const OracleOptions& options = {}) {
  if (s < 3) throw std::invalid_argument("exact_wsat: need s >= 3");
  detail::require_budget(g, options.max_edges_wsat, "exact_wsat");
  const std::size_t n = g.vertex_count();

  const std::vector<Edge> forced = edges_outside_every_ks(g, s);
  std::vector<Edge> optional_edges;
  for (const Edge& e : g.edges())
    if (std::find(forced.begin(), forced.end(), e) == forced.end()) optional_edges.push_back(e);

  Graph base(n);
  for (const Edge& e : forced) base.add_edge(e.u, e.v);

  OracleResult result;
  const std::size_t m = optional_edges.size();
  for (std::size_t k = 0; k <= m; ++k) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    while (true) {
      if (options.max_nodes && result.nodes_explored >= options.max_nodes) {
        // Budget spent: report the lexicographic greedy maximal K_s-free
        // subgraph, which is weakly saturated, as an upper bound.
        Graph greedy(n);
        CompletionChecker check(greedy, s);
        for (const Edge& e : g.edges())
          if (!check.completes(e.u, e.v)) greedy.add_edge(e.u, e.v);
        result.value = greedy.edge_count();
        result.witness = std::move(greedy);
        result.exhausted = false;
        return result;
      }
      ++result.nodes_explored;
      Graph h = base;
      for (std::size_t i : idx) h.add_edge(optional_edges[i].u, optional_edges[i].v);
      if (is_ks_free(h, s) && bootstrap_closure(h, g, s).graph == g) {
        result.value = h.edge_count();
        result.witness = std::move(h);
        result.exhausted = true;
        return result;
      }
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  // Unreachable: a maximal K_s-free subgraph is always weakly saturated.
  throw std::logic_error("exact_wsat: search ended without a weakly saturated subgraph");
}

}  // namespace satlab

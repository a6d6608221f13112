#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "dipw/digraph.hpp"
#include "dipw/separations.hpp"

namespace dipw::testing {

/// Every digraph on n vertices, indexed by a bitmask over ordered pairs.
inline Digraph digraph_from_mask(std::size_t n, std::uint64_t mask) {
  std::vector<Edge> es;
  std::size_t bit = 0;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      if (u == v) continue;
      if ((mask >> bit) & 1U) es.emplace_back(u, v);
      ++bit;
    }
  }
  return Digraph(n, es);
}

inline std::uint64_t digraph_count(std::size_t n) { return std::uint64_t{1} << (n * (n - 1)); }

/// Every pair (A, B) with A u B = V, by a base-3 label per vertex:
/// 0 = A only, 1 = B only, 2 = both.
template <typename Fn>
void for_each_cover(std::size_t n, Fn&& fn) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    VertexSet a(n);
    VertexSet b(n);
    std::size_t c = code;
    for (Vertex v = 0; v < n; ++v, c /= 3) {
      if (c % 3 != 1) a.insert(v);
      if (c % 3 != 0) b.insert(v);
    }
    fn(Separation{a, b});
  }
}

inline std::optional<std::size_t> brute_min_order(const Digraph& g, const VertexSet& s, const VertexSet& t) {
  std::optional<std::size_t> best;
  for_each_cover(g.order(), [&](const Separation& sep) {
    if (is_st_separation(g, sep, s, t) && (!best || sep.order() < *best)) best = sep.order();
  });
  return best;
}

inline bool is_trivial(const Separation& sep, const VertexSet& s, const VertexSet& t) {
  return sep.b == s.complement() || sep.a == t.complement();
}

/// True iff some minimum S-T separation is non-trivial.
inline bool brute_has_nontrivial_min(const Digraph& g, const VertexSet& s, const VertexSet& t) {
  const auto best = brute_min_order(g, s, t);
  bool found = false;
  for_each_cover(g.order(), [&](const Separation& sep) {
    if (is_st_separation(g, sep, s, t) && sep.order() == *best && !is_trivial(sep, s, t)) found = true;
  });
  return found;
}

/// Minimum ordering width over all n! orderings.
inline std::size_t brute_pathwidth(const Digraph& g) {
  std::vector<Vertex> order(g.order());
  std::iota(order.begin(), order.end(), 0);
  std::size_t best = g.order();
  do {
    best = std::min(best, ordering_width(g, order));
  } while (std::next_permutation(order.begin(), order.end()));
  return g.order() == 0 ? 0 : best;
}

}  // namespace dipw::testing

#include "dipw/sampler.hpp"

namespace dipw::testing {

namespace detail {

inline bool extend_regular(std::vector<std::uint32_t>& adj, std::vector<std::size_t>& deficit, std::size_t n) {
  const std::size_t total = adj.size();
  std::size_t u = 0;
  while (u < total && deficit[u] == 0) ++u;
  if (u == total) return true;
  bool tried_fresh = false;
  for (std::size_t w = u + 1; w < total; ++w) {
    if (deficit[w] == 0 || ((adj[u] >> w) & 1U) || (u < n && w < n)) continue;
    // Untouched new vertices are interchangeable: try only the first.
    const bool fresh = w >= n && adj[w] == 0;
    if (fresh && tried_fresh) continue;
    tried_fresh = tried_fresh || fresh;
    adj[u] |= 1U << w;
    adj[w] |= 1U << u;
    --deficit[u];
    --deficit[w];
    if (extend_regular(adj, deficit, n)) return true;
    adj[u] &= ~(1U << w);
    adj[w] &= ~(1U << u);
    ++deficit[u];
    ++deficit[w];
  }
  return false;
}

}  // namespace detail

/// Exhaustive search for a d-regular graph on n + m vertices with g as an
/// induced subgraph on the first n vertices.
inline bool brute_regular_extension_exists(const UGraph& g, std::size_t d, std::size_t m) {
  const std::size_t n = g.order();
  const std::size_t total = n + m;
  std::vector<std::uint32_t> adj(total, 0);
  std::vector<std::size_t> deficit(total, d);
  for (const auto& [u, v] : g.edges()) {
    adj[u] |= 1U << v;
    adj[v] |= 1U << u;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) > d) return false;
    deficit[v] = d - g.degree(v);
  }
  return detail::extend_regular(adj, deficit, n);
}

inline UGraph ugraph_from_mask(std::size_t n, std::uint64_t mask) {
  std::vector<Edge> es;
  std::size_t bit = 0;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v, ++bit) {
      if ((mask >> bit) & 1U) es.emplace_back(u, v);
    }
  }
  return UGraph(n, es);
}

inline std::vector<std::size_t> degrees(const UGraph& g) {
  std::vector<std::size_t> out;
  for (Vertex v = 0; v < g.order(); ++v) out.push_back(g.degree(v));
  return out;
}

}  // namespace dipw::testing

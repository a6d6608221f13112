#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dipw/vertex_set.hpp"

namespace dipw {

using Edge = std::pair<Vertex, Vertex>;

/// Immutable simple digraph on vertices 0..n-1.
///
/// Out- and in-neighbourhoods are kept both as bitsets (for set algebra) and
/// as sorted lists (for traversal). No self-loops, at most one edge per
/// ordered pair.
class Digraph {
 public:
  Digraph() = default;

  /// Throws InputError on self-loops, duplicate edges or out-of-range ends.
  Digraph(std::size_t n, const std::vector<Edge>& edges);

  std::size_t order() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edge_count_; }

  bool has_edge(Vertex u, Vertex v) const noexcept { return u < n_ && out_[u].contains(v); }
  bool adjacent(Vertex u, Vertex v) const noexcept { return has_edge(u, v) || has_edge(v, u); }

  const VertexSet& out_neighbors(Vertex v) const { return out_[v]; }
  const VertexSet& in_neighbors(Vertex v) const { return in_[v]; }
  const std::vector<Vertex>& out_list(Vertex v) const { return out_list_[v]; }
  const std::vector<Vertex>& in_list(Vertex v) const { return in_list_[v]; }

  std::size_t out_degree(Vertex v) const { return out_list_[v].size(); }
  std::size_t in_degree(Vertex v) const { return in_list_[v].size(); }

  VertexSet empty_set() const { return VertexSet(n_); }
  VertexSet all() const { return VertexSet::full(n_); }

  /// N+[U] and N+(U) = N+[U] \ U.
  VertexSet out_closed(const VertexSet& u) const;
  VertexSet out_open(const VertexSet& u) const { return out_closed(u) - u; }
  /// N-[U] and N-(U).
  VertexSet in_closed(const VertexSet& u) const;
  VertexSet in_open(const VertexSet& u) const { return in_closed(u) - u; }

  /// d+(U) = |N+(U)|, d-(U) = |N-(U)|.
  std::size_t d_plus(const VertexSet& u) const { return out_open(u).count(); }
  std::size_t d_minus(const VertexSet& u) const { return in_open(u).count(); }

  /// Edges sorted lexicographically.
  std::vector<Edge> edges() const;

  Digraph reversed() const;
  Digraph induced(const VertexSet& keep) const;

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.n_ == b.n_ && a.out_list_ == b.out_list_;
  }

 private:
  std::size_t n_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<VertexSet> out_;
  std::vector<VertexSet> in_;
  std::vector<std::vector<Vertex>> out_list_;
  std::vector<std::vector<Vertex>> in_list_;
};

/// Checks that every member of `u` lies in V(g); throws InputError otherwise.
void require_within(const Digraph& g, const VertexSet& u, const char* what);

/// d+(U) after validating U against g.
std::size_t d_plus(const Digraph& g, const VertexSet& u);
std::size_t d_minus(const Digraph& g, const VertexSet& u);

/// Smallest h such that g is h-semicomplete: max over v of the number of
/// u != v with no edge in either direction.
std::size_t h_index(const Digraph& g);

/// Adds, for every non-adjacent pair, the edge from the vertex listed later
/// to the one listed earlier in the order sorted by (out-degree, index).
Digraph semicomplete_completion(const Digraph& g);

/// Random digraph with h_index <= h. Deterministic in (n, h, seed).
Digraph random_h_semicomplete(std::size_t n, std::size_t h, std::uint64_t seed);

/// Random h-semicomplete digraph of small pathwidth: edges mostly point from
/// later to earlier vertices of a hidden order, with orientation noise
/// restricted to pairs at most `band` apart.
Digraph random_banded_h_semicomplete(std::size_t n, std::size_t h, std::size_t band,
                                     std::uint64_t seed);

/// Uniform random digraph: each ordered pair independently with probability
/// `density`.
Digraph random_digraph(std::size_t n, double density, std::uint64_t seed);

Digraph complete_biorientation(std::size_t n);
Digraph directed_cycle(std::size_t n);
Digraph directed_path(std::size_t n);
/// Edges i -> j for every i > j, so vertex i has out-degree i.
Digraph transitive_tournament(std::size_t n);

/// Edge-list text format. Throws ParseError naming the offending line.
Digraph read_digraph(const std::string& text);
std::string write_digraph(const Digraph& g);

}  // namespace dipw

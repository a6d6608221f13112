#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dipw/digraph.hpp"
#include "dipw/vertex_set.hpp"

namespace dipw {

/// Simple undirected graph on 0..n-1 with sorted adjacency lists.
class UGraph {
 public:
  UGraph() = default;
  /// Throws InputError on self-loops, duplicates (either orientation) or
  /// out-of-range ends.
  UGraph(std::size_t n, const std::vector<Edge>& edges);

  std::size_t order() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  std::size_t degree(Vertex v) const { return adj_[v].size(); }
  std::size_t max_degree() const;
  bool has_edge(Vertex u, Vertex v) const;
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }

  /// Pairs (u, v) with u < v, sorted.
  std::vector<Edge> edges() const;

  /// Induced subgraph on `keep`, relabelled to 0..|keep|-1 in ascending order.
  UGraph induced(const VertexSet& keep) const;

  /// True iff no edge joins two members of `set`.
  bool is_independent(const VertexSet& set) const;

  friend bool operator==(const UGraph&, const UGraph&) = default;

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::size_t edge_count_ = 0;
};

/// Graph of pairs with no edge in either direction. Its maximum degree is
/// h_index(g).
UGraph non_adjacency_graph(const Digraph& g);

/// Random graph with maximum degree <= d: shuffled pairs accepted with
/// probability `density` while both ends have spare degree.
UGraph random_bounded_degree_graph(std::size_t n, std::size_t d, double density, std::uint64_t seed);

/// Undirected variant of the edge-list format (each unordered pair once).
UGraph read_ugraph(const std::string& text);
std::string write_ugraph(const UGraph& g);

/// Existence conditions for a d-regular graph on n + m vertices containing g
/// (given by its degree sequence) as an induced subgraph, t = sum(d - deg):
/// md >= t, m^2 - m(d+1) + t >= 0, m >= d - deg(v) for all v, (n+m)d even.
/// Throws InputError if some degree exceeds d.
bool erdos_kelly_feasible(const std::vector<std::size_t>& degrees, std::size_t d, std::size_t m);

/// d-regular graph on `total` vertices whose first g.order() vertices carry
/// g as a subgraph. Requires max degree <= d, total >= n + d + 1 and
/// total * d even; throws InputError otherwise.
///
/// Deterministic: repeatedly joins the lowest-indexed non-adjacent pair of
/// deficient vertices, then repairs the leftover deficient clique by edge
/// rotations.
UGraph regular_completion(const UGraph& g, std::size_t d, std::size_t total);

/// p = 1 / (2(d + 1)), the inclusion probability of every vertex.
double sampler_marginal(std::size_t d);

struct RoundStep {
  /// Vertex added to I in this round, if the draw hit V_i.
  std::optional<Vertex> added;
  /// V_{i+1}.
  VertexSet next;
};

/// The uniform-marginal independent-set sampler for graphs of maximum degree
/// <= d. Round i (0 <= i < s, s = ceil(n / (d+1))) completes G[V_i] to a
/// d-regular graph H_i on n_i = (2s - i)(d + 1) vertices, draws one vertex v
/// of H_i uniformly, adds it to I if it lies in V_i, and removes v and its
/// H_i-neighbours from V_i.
class IndependentSetSampler {
 public:
  /// Throws InputError if g has a vertex of degree > d.
  IndependentSetSampler(UGraph g, std::size_t d);

  const UGraph& graph() const noexcept { return g_; }
  std::size_t degree_bound() const noexcept { return d_; }
  std::size_t rounds() const noexcept { return s_; }
  /// n_i.
  std::size_t pool_size(std::size_t round) const;

  /// H_i for candidate set `v_set`: vertex j < |V_i| is the j-th smallest
  /// member of V_i, the rest are padding vertices.
  UGraph completion(const VertexSet& v_set, std::size_t round) const;

  /// Deterministic transition for draw index `draw` in [0, n_i).
  RoundStep step(const VertexSet& v_set, std::size_t round, std::size_t draw) const;

  /// One full run. Deterministic per seed. Checks the loop invariants each
  /// round and throws std::logic_error if one fails.
  VertexSet sample(std::uint64_t seed) const;

 private:
  void require_universe(const VertexSet& v_set) const;

  UGraph g_;
  std::size_t d_;
  std::size_t s_;
};

VertexSet sample_independent_set(const UGraph& g, std::size_t d, std::uint64_t seed);

struct VertexMarginal {
  Vertex v = 0;
  std::size_t hits = 0;
  double frequency = 0.0;
  /// Exact (Clopper-Pearson) interval for `hits` successes at the report's
  /// confidence level.
  double ci_low = 0.0;
  double ci_high = 0.0;
  /// Whether p lies inside [ci_low, ci_high].
  bool consistent = false;
};

struct TailRow {
  std::size_t set_id = 0;
  std::size_t set_size = 0;
  std::size_t t = 0;
  double empirical_upper = 0.0;
  double empirical_lower = 0.0;
  /// exp(-t^2 / (9|S|)).
  double bound = 0.0;
  /// exp(-t^2 / (6|S|)), informational.
  double bound_tight = 0.0;
  /// 3 sigma Monte-Carlo slack at probability `bound`.
  double slack = 0.0;
  bool upper_ok = false;
  bool lower_ok = false;
};

struct MarginalReport {
  std::size_t trials = 0;
  std::size_t d = 0;
  double p = 0.0;
  double confidence = 0.0;
  std::size_t dependent_samples = 0;
  std::vector<VertexMarginal> vertices;
  std::vector<TailRow> tails;

  bool marginals_ok() const;
  bool tails_ok() const;
  std::string to_table() const;
  /// Columns: set_id,t,empirical_upper,bound,empirical_lower.
  std::string to_csv() const;
};

/// Monte-Carlo check of the marginals and of both tails for each target set,
/// t = 1..ceil(3 sqrt|S|). Trial j uses seed derive_seed(seed, j); `jobs`
/// worker threads split the trials, results do not depend on `jobs`.
MarginalReport marginal_and_tail_check(const UGraph& g, std::size_t d, std::size_t trials,
                                       const std::vector<VertexSet>& target_sets, std::uint64_t seed,
                                       std::size_t jobs = 1, double confidence = 0.999);

}  // namespace dipw

#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dipw/digraph.hpp"

namespace dipw {

/// Order value standing for "no S-T separation exists"; larger than any
/// finite order.
inline constexpr std::size_t kInfiniteOrder = std::numeric_limits<std::size_t>::max();

/// A pair (A, B) with A u B = V and no edge from A\B to B\A.
struct Separation {
  VertexSet a;
  VertexSet b;

  std::size_t order() const { return (a & b).count(); }

  friend bool operator==(const Separation&, const Separation&) = default;
};

bool is_separation(const Digraph& g, const VertexSet& a, const VertexSet& b);
inline bool is_separation(const Digraph& g, const Separation& sep) {
  return is_separation(g, sep.a, sep.b);
}
inline std::size_t sep_order(const Separation& sep) { return sep.order(); }

/// Separation with S n B = {} and T n A = {}.
bool is_st_separation(const Digraph& g, const Separation& sep, const VertexSet& s,
                      const VertexSet& t);

/// The two trivial S-T separations (N+[S], V\S) and (V\T, N-[T]).
Separation left_trivial(const Digraph& g, const VertexSet& s);
Separation right_trivial(const Digraph& g, const VertexSet& t);

/// Minimum S-T separation by unit vertex-capacity max-flow.
///
/// The returned separation is the leftmost minimum one: its A is contained in
/// the A of every other minimum S-T separation. Returns nullopt iff some edge
/// goes from S to T. Throws InputError if S and T overlap.
std::optional<Separation> min_st_separation(const Digraph& g, const VertexSet& s,
                                            const VertexSet& t);

/// Like min_st_separation, but gives up (nullopt) as soon as the order is
/// known to exceed `limit`.
std::optional<Separation> min_st_separation_bounded(const Digraph& g, const VertexSet& s,
                                                    const VertexSet& t, std::size_t limit);

/// A minimum S-T separation (X, Y) with X\Y strictly containing S and Y\X
/// strictly containing T, if one exists.
std::optional<Separation> find_nontrivial_min_separation(const Digraph& g, const VertexSet& s,
                                                         const VertexSet& t);

/// Minimum separation order, kInfiniteOrder when none exists.
std::size_t gamma(const Digraph& g, const VertexSet& s, const VertexSet& t);

/// 2|V \ (N+[S] u N-[T])| + |N+(S) xor N-(T)|.
std::size_t mu(const Digraph& g, const VertexSet& s, const VertexSet& t);

/// max{0, 2 mu - 1}.
std::size_t mu_prime(const Digraph& g, const VertexSet& s, const VertexSet& t);

struct SeparationChain {
  std::vector<Separation> seps;

  std::size_t size() const { return seps.size(); }
  bool empty() const { return seps.empty(); }
  const Separation& front() const { return seps.front(); }
  const Separation& back() const { return seps.back(); }

  /// Max member order; 0 for the empty chain.
  std::size_t order() const;

  /// Appends `sep` unless it equals the current last member.
  void push_back(const Separation& sep);
  /// Concatenation, collapsing a repeated separation at the seam.
  void append(const SeparationChain& other);

  friend bool operator==(const SeparationChain&, const SeparationChain&) = default;
};

struct ChainReport {
  bool is_chain = false;
  bool is_st_chain = false;
  bool is_gapless = false;
  bool is_nice = false;
  bool is_tight = false;
  std::size_t order = 0;
};

ChainReport chain_predicates(const Digraph& g, const SeparationChain& c, const VertexSet& s,
                             const VertexSet& t);

/// Sequence of bags (X_1, ..., X_m).
struct PathDecomposition {
  std::vector<VertexSet> bags;

  /// max |X_i| - 1, floored at 0.
  std::size_t width() const;
};

struct DecompositionReport {
  bool valid = false;
  std::size_t width = 0;
  std::string violation;
};

/// Checks cover, the edge condition (tail in a bag at or after the head's
/// bag) and contiguity. Reports the first violation found.
DecompositionReport validate_decomposition(const Digraph& g, const PathDecomposition& pd);

/// Bags W_i = A_i n B_{i-1}. Requires a gapless {}-{} chain; throws
/// InputError naming the first failing index otherwise.
PathDecomposition chain_to_decomposition(const Digraph& g, const SeparationChain& c);

/// Gapless {}-{} chain (N+[P_i], V \ P_i) over the prefixes P_i of `ordering`.
/// Its order is the vertex-separation width of the ordering.
SeparationChain ordering_to_chain(const Digraph& g, const std::vector<Vertex>& ordering);

/// max over prefixes P of d+(P).
std::size_t ordering_width(const Digraph& g, const std::vector<Vertex>& ordering);

/// "width W" / "bags R" / one line per bag.
std::string write_decomposition(const PathDecomposition& pd);
PathDecomposition read_decomposition(const std::string& text, std::size_t n);

/// One line per separation: "A-members | B-members".
std::string write_chain(const SeparationChain& c);
SeparationChain read_chain(const std::string& text, std::size_t n);

}  // namespace dipw

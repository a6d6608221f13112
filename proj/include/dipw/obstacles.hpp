#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dipw/digraph.hpp"

namespace dipw {

/// (d, l, k)-degree tangle: l vertices with out-degree in [d, d + k].
struct DegreeTangle {
  VertexSet t;
  std::size_t d = 0;
  std::size_t l = 0;
  std::size_t k = 0;
};

/// (d, l, k)-matching tangle: edges v -> phi(v) from out-degree <= d to
/// out-degree >= d + k + 1, pairwise disjoint.
struct MatchingTangle {
  std::vector<std::pair<Vertex, Vertex>> phi;
  std::size_t d = 0;
  std::size_t l = 0;
  std::size_t k = 0;
};

/// (d, l, w)-spider. Each leg v has in-neighbours L_v of out-degree <= d and
/// out-neighbours R_v of out-degree >= d + w, at least 3l of each.
struct Spider {
  struct Leg {
    Vertex v = 0;
    std::vector<Vertex> left;
    std::vector<Vertex> right;
  };
  std::vector<Leg> legs;
  std::size_t d = 0;
  std::size_t l = 0;
  std::size_t w = 0;
};

using Obstacle = std::variant<DegreeTangle, MatchingTangle, Spider>;

struct Certificate {
  Obstacle obstacle;
  std::size_t lower_bound = 0;
};

/// Verifier outcome: a lower bound on pathwidth, or a diagnosis.
struct Verdict {
  std::optional<std::size_t> lower_bound;
  std::string diagnosis;

  explicit operator bool() const { return lower_bound.has_value(); }
};

/// Throws InputError unless g is semicomplete.
void require_semicomplete(const Digraph& g, const char* what);

/// Bound ceil((l - k - 1) / 2), floored at 0.
Verdict verify_degree_tangle(const Digraph& g, const DegreeTangle& cert);
/// Bound min{l, k + 1}.
Verdict verify_matching_tangle(const Digraph& g, const MatchingTangle& cert);
/// Bound min{l, w}. The legs give l disjoint paths from out-degree <= d to
/// out-degree >= d + w, which is all the disjoint-paths bound needs.
Verdict verify_spider(const Digraph& g, const Spider& cert);
Verdict verify(const Digraph& g, const Obstacle& cert);

/// |{u : d+(u) <= d+(v)} \ N+(v)|. Always >= 1 since v counts itself.
std::size_t wildness(const Digraph& g, Vertex v);

/// Tameness with pw(G) replaced by an upper bound `pw_upper`.
bool verify_tameness(const Digraph& g, const DegreeTangle& cert, std::size_t pw_upper);
bool verify_tameness(const Digraph& g, const MatchingTangle& cert, std::size_t pw_upper);
bool verify_tameness(const Digraph& g, const Spider& cert, std::size_t pw_upper);
bool verify_tameness(const Digraph& g, const Obstacle& cert, std::size_t pw_upper);

/// |{v : d+(v) >= d1 and d-(v) >= d2}|.
std::size_t degree_interval_count(const Digraph& g, std::size_t d1, std::size_t d2);

/// Lower bound from the degree-interval inequality, maximised over
/// d1 + d2 < n.
std::size_t degree_interval_lower_bound(const Digraph& g);

/// Largest degree tangle with window width k (smallest d on ties).
std::optional<DegreeTangle> find_degree_tangle(const Digraph& g, std::size_t k);

/// Maximum matching from out-degree <= d to out-degree >= d + k + 1.
std::optional<MatchingTangle> find_matching_tangle(const Digraph& g, std::size_t d, std::size_t k);

/// find_matching_tangle over every d, keeping the best bound.
std::optional<MatchingTangle> find_best_matching_tangle(const Digraph& g, std::size_t k);

/// Spider with the largest bound over all (d, l, w), if any exists.
std::optional<Spider> find_spider(const Digraph& g);

/// Constants of the sampling argument, exposed for reference only.
std::uint64_t obstacle_scale(std::uint64_t k, std::uint64_t h);          // K = (h+1)k
std::uint64_t pathwidth_threshold(std::uint64_t k, std::uint64_t h);     // f = 128(h+1)k
std::uint64_t sampling_k_threshold(std::uint64_t h);                     // 10^7 (h+1)^2

struct SurvivalReport {
  std::size_t n = 0;
  std::size_t h = 0;
  std::size_t tangle_size = 0;
  std::size_t tangle_window = 0;
  std::size_t sample_size = 0;
  std::size_t survivors = 0;
  /// max - min out-degree in G[I] over survivors; 0 if fewer than two.
  std::size_t degree_spread = 0;
  double expected_survivors = 0.0;
  bool sample_semicomplete = false;
};

/// Completes g, takes the best degree tangle (window k) of the completion,
/// samples an independent set of the non-adjacency graph with degree bound h
/// and reports how the tangle survives in G[I].
SurvivalReport survival_experiment(const Digraph& g, std::size_t h, std::size_t k,
                                   std::uint64_t seed);

/// JSON certificate format.
std::string write_certificate(const Obstacle& cert);
Obstacle read_certificate(const std::string& text, std::size_t n);

}  // namespace dipw

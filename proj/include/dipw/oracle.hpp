#pragma once

#include <cstddef>
#include <vector>

#include "dipw/digraph.hpp"

namespace dipw {

inline constexpr std::size_t kDefaultOracleCap = 22;

/// Exact pathwidth as the vertex separation number, by dynamic programming
/// over vertex subsets: value(U) = max(d+(U), min_{v in U} value(U - v)).
///
/// Throws InputError when g has more than `cap` vertices (the table has
/// 2^n entries).
std::size_t oracle_pathwidth(const Digraph& g, std::size_t cap = kDefaultOracleCap);

/// An ordering whose width (max prefix out-section) equals oracle_pathwidth.
std::vector<Vertex> oracle_ordering(const Digraph& g, std::size_t cap = kDefaultOracleCap);

}  // namespace dipw

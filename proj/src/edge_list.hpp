#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dipw/vertex_set.hpp"

namespace dipw::detail {

struct ParsedEdge {
  Vertex u;
  Vertex v;
  std::size_t line;
};

struct ParsedEdgeList {
  std::size_t n = 0;
  std::vector<ParsedEdge> edges;
};

/// Parses the shared `n m` + m lines `u v` format. Checks syntax, counts,
/// index range and self-loops; duplicate detection is left to the caller
/// since it depends on whether pairs are ordered.
ParsedEdgeList parse_edge_list(const std::string& text);

}  // namespace dipw::detail

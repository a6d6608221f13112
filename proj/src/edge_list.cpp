#include "edge_list.hpp"

#include <charconv>
#include <optional>
#include <sstream>

#include "dipw/error.hpp"

namespace dipw::detail {
namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::size_t parse_count(const std::string& tok, std::size_t line) {
  std::size_t value = 0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(line, "expected a non-negative integer, got '" + tok + "'");
  }
  return value;
}

bool is_blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (c != ' ' && c != '\t' && c != '\r') return false;
  }
  return true;
}

}  // namespace

ParsedEdgeList parse_edge_list(const std::string& text) {
  ParsedEdgeList out;
  std::istringstream is(text);
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> expected_edges;

  while (std::getline(is, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    const auto toks = tokenize(line);
    if (toks.size() != 2) {
      throw ParseError(line_no, "expected exactly two integers, got " + std::to_string(toks.size()) +
                                    " fields");
    }
    const std::size_t a = parse_count(toks[0], line_no);
    const std::size_t b = parse_count(toks[1], line_no);
    if (!expected_edges) {
      out.n = a;
      expected_edges = b;
      out.edges.reserve(b);
      continue;
    }
    if (out.edges.size() == *expected_edges) {
      throw ParseError(line_no, "more edge lines than the declared " + std::to_string(*expected_edges));
    }
    if (a >= out.n || b >= out.n) {
      throw ParseError(line_no, "vertex index out of range for n = " + std::to_string(out.n));
    }
    if (a == b) throw ParseError(line_no, "self-loop on vertex " + std::to_string(a));
    out.edges.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b), line_no});
  }

  if (!expected_edges) throw ParseError(0, "missing 'n m' header line");
  if (out.edges.size() != *expected_edges) {
    throw ParseError(0, "declared " + std::to_string(*expected_edges) + " edges but found " +
                            std::to_string(out.edges.size()));
  }
  return out;
}

}  // namespace dipw::detail

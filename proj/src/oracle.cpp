#include "dipw/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "dipw/error.hpp"

namespace dipw {
namespace {

using Mask = std::uint32_t;

struct Table {
  std::vector<std::uint8_t> value;
  std::vector<Mask> closed_out;

  std::size_t out_section(Mask u) const {
    Mask reach = u;
    for (Mask bits = u; bits != 0; bits &= bits - 1) reach |= closed_out[std::countr_zero(bits)];
    return static_cast<std::size_t>(std::popcount(reach & ~u));
  }
};

Table build_table(const Digraph& g, std::size_t cap) {
  const std::size_t n = g.order();
  if (n > cap || n > 30) {
    throw InputError("oracle: graph has " + std::to_string(n) + " vertices, cap is " +
                     std::to_string(std::min<std::size_t>(cap, 30)));
  }
  Table tab;
  tab.closed_out.assign(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    tab.closed_out[v] = Mask{1} << v;
    for (Vertex w : g.out_list(v)) tab.closed_out[v] |= Mask{1} << w;
  }
  const std::size_t size = std::size_t{1} << n;
  tab.value.assign(size, 0);
  for (std::size_t u = 1; u < size; ++u) {
    const Mask m = static_cast<Mask>(u);
    std::uint8_t best = 0xff;
    for (Mask bits = m; bits != 0; bits &= bits - 1) {
      const Mask prev = m & ~(bits & (~bits + 1));
      best = std::min(best, tab.value[prev]);
    }
    tab.value[u] = static_cast<std::uint8_t>(std::max<std::size_t>(best, tab.out_section(m)));
  }
  return tab;
}

}  // namespace

std::size_t oracle_pathwidth(const Digraph& g, std::size_t cap) {
  const auto tab = build_table(g, cap);
  return tab.value.back();
}

std::vector<Vertex> oracle_ordering(const Digraph& g, std::size_t cap) {
  const auto tab = build_table(g, cap);
  const std::size_t n = g.order();
  std::vector<Vertex> reversed;
  reversed.reserve(n);
  Mask u = static_cast<Mask>((std::size_t{1} << n) - 1);
  while (u != 0) {
    Vertex pick = 0;
    std::uint8_t best = 0xff;
    for (Mask bits = u; bits != 0; bits &= bits - 1) {
      const auto v = static_cast<Vertex>(std::countr_zero(bits));
      const std::uint8_t cand = tab.value[u & ~(Mask{1} << v)];
      if (cand < best) {
        best = cand;
        pick = v;
      }
    }
    reversed.push_back(pick);
    u &= ~(Mask{1} << pick);
  }
  return {reversed.rbegin(), reversed.rend()};
}

}  // namespace dipw

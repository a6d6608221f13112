#include "dipw/digraph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "dipw/error.hpp"
#include "dipw/rng.hpp"
#include "edge_list.hpp"

namespace dipw {

Digraph::Digraph(std::size_t n, const std::vector<Edge>& edges)
    : n_(n),
      out_(n, VertexSet(n)),
      in_(n, VertexSet(n)),
      out_list_(n),
      in_list_(n) {
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw InputError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                       ") has an endpoint outside 0.." + std::to_string(n) + "-1");
    }
    if (u == v) throw InputError("self-loop on vertex " + std::to_string(u));
    if (out_[u].contains(v)) {
      throw InputError("duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    }
    out_[u].insert(v);
    in_[v].insert(u);
  }
  edge_count_ = edges.size();
  for (Vertex v = 0; v < n; ++v) {
    out_list_[v] = out_[v].members();
    in_list_[v] = in_[v].members();
  }
}

VertexSet Digraph::out_closed(const VertexSet& u) const {
  VertexSet r = u;
  u.for_each([&](Vertex v) { r |= out_[v]; });
  return r;
}

VertexSet Digraph::in_closed(const VertexSet& u) const {
  VertexSet r = u;
  u.for_each([&](Vertex v) { r |= in_[v]; });
  return r;
}

std::vector<Edge> Digraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v : out_list_[u]) out.emplace_back(u, v);
  }
  return out;
}

Digraph Digraph::reversed() const {
  std::vector<Edge> es;
  es.reserve(edge_count_);
  for (const auto& [u, v] : edges()) es.emplace_back(v, u);
  return Digraph(n_, es);
}

Digraph Digraph::induced(const VertexSet& keep) const {
  std::vector<Vertex> index(n_, 0);
  const auto kept = keep.members();
  for (std::size_t i = 0; i < kept.size(); ++i) index[kept[i]] = static_cast<Vertex>(i);
  std::vector<Edge> es;
  for (Vertex u : kept) {
    for (Vertex v : out_list_[u]) {
      if (keep.contains(v)) es.emplace_back(index[u], index[v]);
    }
  }
  return Digraph(kept.size(), es);
}

void require_within(const Digraph& g, const VertexSet& u, const char* what) {
  if (u.universe() != g.order()) {
    throw InputError(std::string(what) + ": vertex set universe " + std::to_string(u.universe()) +
                     " does not match graph order " + std::to_string(g.order()));
  }
}

std::size_t d_plus(const Digraph& g, const VertexSet& u) {
  require_within(g, u, "d_plus");
  return g.d_plus(u);
}

std::size_t d_minus(const Digraph& g, const VertexSet& u) {
  require_within(g, u, "d_minus");
  return g.d_minus(u);
}

std::size_t h_index(const Digraph& g) {
  const std::size_t n = g.order();
  std::size_t h = 0;
  for (Vertex v = 0; v < n; ++v) {
    const std::size_t neighbours = (g.out_neighbors(v) | g.in_neighbors(v)).count();
    h = std::max(h, n - 1 - neighbours);
  }
  return h;
}

Digraph semicomplete_completion(const Digraph& g) {
  const std::size_t n = g.order();
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return g.out_degree(a) < g.out_degree(b); });
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;

  auto es = g.edges();
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (g.adjacent(u, v)) continue;
      if (pos[u] > pos[v]) {
        es.emplace_back(u, v);
      } else {
        es.emplace_back(v, u);
      }
    }
  }
  return Digraph(n, es);
}

namespace {

template <typename T>
void shuffle(std::vector<T>& items, SplitMix64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[rng.below(i)]);
  }
}

/// Random undirected pairs with at most `h` pairs per vertex, greedily
/// accepted in shuffled order.
std::set<Edge> random_bounded_pairs(std::size_t n, std::size_t h, SplitMix64& rng) {
  std::set<Edge> removed;
  if (h == 0) return removed;
  std::vector<Edge> pairs;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  }
  shuffle(pairs, rng);
  std::vector<std::size_t> budget(n, h);
  for (const auto& [u, v] : pairs) {
    if (budget[u] > 0 && budget[v] > 0) {
      --budget[u];
      --budget[v];
      removed.insert({u, v});
    }
  }
  return removed;
}

void orient_randomly(Vertex u, Vertex v, SplitMix64& rng, std::vector<Edge>& es) {
  switch (rng.below(3)) {
    case 0:
      es.emplace_back(u, v);
      break;
    case 1:
      es.emplace_back(v, u);
      break;
    default:
      es.emplace_back(u, v);
      es.emplace_back(v, u);
      break;
  }
}

}  // namespace

Digraph random_h_semicomplete(std::size_t n, std::size_t h, std::uint64_t seed) {
  if (n > 0 && h >= n) {
    throw InputError("random_h_semicomplete: need h < n, got h = " + std::to_string(h) +
                     ", n = " + std::to_string(n));
  }
  SplitMix64 rng(seed);
  std::vector<Edge> oriented;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) orient_randomly(u, v, rng, oriented);
  }
  const auto removed = random_bounded_pairs(n, h, rng);
  std::vector<Edge> es;
  for (const auto& [u, v] : oriented) {
    if (!removed.contains({std::min(u, v), std::max(u, v)})) es.emplace_back(u, v);
  }
  return Digraph(n, es);
}

Digraph random_banded_h_semicomplete(std::size_t n, std::size_t h, std::size_t band,
                                     std::uint64_t seed) {
  if (n > 0 && h >= n) {
    throw InputError("random_banded_h_semicomplete: need h < n, got h = " + std::to_string(h) +
                     ", n = " + std::to_string(n));
  }
  SplitMix64 rng(seed);
  std::vector<Vertex> hidden(n);
  std::iota(hidden.begin(), hidden.end(), Vertex{0});
  shuffle(hidden, rng);
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[hidden[i]] = i;

  std::vector<Edge> oriented;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const std::size_t gap = pos[u] > pos[v] ? pos[u] - pos[v] : pos[v] - pos[u];
      if (gap <= band) {
        orient_randomly(u, v, rng, oriented);
      } else if (pos[u] > pos[v]) {
        oriented.emplace_back(u, v);
      } else {
        oriented.emplace_back(v, u);
      }
    }
  }
  const auto removed = random_bounded_pairs(n, h, rng);
  std::vector<Edge> es;
  for (const auto& [u, v] : oriented) {
    if (!removed.contains({std::min(u, v), std::max(u, v)})) es.emplace_back(u, v);
  }
  return Digraph(n, es);
}

Digraph random_digraph(std::size_t n, double density, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Edge> es;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      if (u != v && rng.unit() < density) es.emplace_back(u, v);
    }
  }
  return Digraph(n, es);
}

Digraph complete_biorientation(std::size_t n) {
  std::vector<Edge> es;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      if (u != v) es.emplace_back(u, v);
    }
  }
  return Digraph(n, es);
}

Digraph directed_cycle(std::size_t n) {
  std::vector<Edge> es;
  if (n >= 2) {
    for (Vertex v = 0; v < n; ++v) es.emplace_back(v, static_cast<Vertex>((v + 1) % n));
  }
  return Digraph(n, es);
}

Digraph directed_path(std::size_t n) {
  std::vector<Edge> es;
  for (Vertex v = 0; v + 1 < n; ++v) es.emplace_back(v, v + 1);
  return Digraph(n, es);
}

Digraph transitive_tournament(std::size_t n) {
  std::vector<Edge> es;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < u; ++v) es.emplace_back(u, v);
  }
  return Digraph(n, es);
}

Digraph read_digraph(const std::string& text) {
  const auto parsed = detail::parse_edge_list(text);
  std::set<Edge> seen;
  std::vector<Edge> es;
  es.reserve(parsed.edges.size());
  for (const auto& e : parsed.edges) {
    if (!seen.insert({e.u, e.v}).second) {
      throw ParseError(e.line, "duplicate edge " + std::to_string(e.u) + " -> " + std::to_string(e.v));
    }
    es.emplace_back(e.u, e.v);
  }
  return Digraph(parsed.n, es);
}

std::string write_digraph(const Digraph& g) {
  std::ostringstream os;
  os << g.order() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) os << u << ' ' << v << '\n';
  return os.str();
}

}  // namespace dipw

#include "dipw/obstacles.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "dipw/error.hpp"
#include "dipw/sampler.hpp"

namespace dipw {
namespace {

Verdict reject(std::string why) { return Verdict{std::nullopt, std::move(why)}; }
Verdict accept(std::size_t bound) { return Verdict{bound, {}}; }

std::string vname(Vertex v) { return "vertex " + std::to_string(v); }

bool in_range(const Digraph& g, Vertex v) { return v < g.order(); }

}  // namespace

void require_semicomplete(const Digraph& g, const char* what) {
  if (h_index(g) != 0) throw InputError(std::string(what) + ": digraph is not semicomplete");
}

Verdict verify_degree_tangle(const Digraph& g, const DegreeTangle& cert) {
  require_semicomplete(g, "verify_degree_tangle");
  if (cert.t.universe() != g.order()) return reject("vertex set universe does not match the digraph");
  if (cert.l == 0) return reject("l must be positive");
  if (cert.t.count() != cert.l) {
    return reject("|T| = " + std::to_string(cert.t.count()) + " but l = " + std::to_string(cert.l));
  }
  std::string bad;
  cert.t.for_each([&](Vertex v) {
    const std::size_t deg = g.out_degree(v);
    if (bad.empty() && (deg < cert.d || deg > cert.d + cert.k)) {
      bad = vname(v) + " has out-degree " + std::to_string(deg) + " outside [" + std::to_string(cert.d) +
            ", " + std::to_string(cert.d + cert.k) + "]";
    }
  });
  if (!bad.empty()) return reject(bad);
  if (cert.l <= cert.k + 1) return accept(0);
  return accept((cert.l - cert.k - 1 + 1) / 2);
}

Verdict verify_matching_tangle(const Digraph& g, const MatchingTangle& cert) {
  require_semicomplete(g, "verify_matching_tangle");
  if (cert.l == 0) return reject("l must be positive");
  if (cert.phi.size() != cert.l) {
    return reject("phi has " + std::to_string(cert.phi.size()) + " pairs but l = " + std::to_string(cert.l));
  }
  std::set<Vertex> seen;
  for (const auto& [v, u] : cert.phi) {
    if (!in_range(g, v) || !in_range(g, u)) return reject("pair (" + std::to_string(v) + ", " + std::to_string(u) + ") out of range");
    if (!seen.insert(v).second || !seen.insert(u).second) return reject("phi is not a bijection between disjoint sets");
    if (g.out_degree(v) > cert.d) return reject(vname(v) + " in T1 has out-degree above d");
    if (g.out_degree(u) < cert.d + cert.k + 1) return reject(vname(u) + " in T2 has out-degree below d + k + 1");
    if (!g.has_edge(v, u)) return reject("missing edge " + std::to_string(v) + " -> " + std::to_string(u));
  }
  return accept(std::min(cert.l, cert.k + 1));
}

Verdict verify_spider(const Digraph& g, const Spider& cert) {
  require_semicomplete(g, "verify_spider");
  if (cert.l == 0) return reject("l must be positive");
  if (cert.w == 0) return reject("w must be positive");
  if (cert.legs.size() < cert.l) {
    return reject("|T| = " + std::to_string(cert.legs.size()) + " is below l = " + std::to_string(cert.l));
  }
  std::set<Vertex> centres;
  for (const auto& leg : cert.legs) {
    if (!in_range(g, leg.v)) return reject(vname(leg.v) + " out of range");
    if (!centres.insert(leg.v).second) return reject(vname(leg.v) + " appears twice in T");
    const std::set<Vertex> left(leg.left.begin(), leg.left.end());
    const std::set<Vertex> right(leg.right.begin(), leg.right.end());
    if (left.size() != leg.left.size() || right.size() != leg.right.size()) {
      return reject("repeated vertex in a leg of " + vname(leg.v));
    }
    if (left.size() < 3 * cert.l) return reject("|L_v| < 3l for " + vname(leg.v));
    if (right.size() < 3 * cert.l) return reject("|R_v| < 3l for " + vname(leg.v));
    for (Vertex u : left) {
      if (!in_range(g, u) || !g.has_edge(u, leg.v)) return reject(vname(u) + " in L_v is not an in-neighbour of " + vname(leg.v));
      if (g.out_degree(u) > cert.d) return reject(vname(u) + " in L_v has out-degree above d");
    }
    for (Vertex u : right) {
      if (!in_range(g, u) || !g.has_edge(leg.v, u)) return reject(vname(u) + " in R_v is not an out-neighbour of " + vname(leg.v));
      if (g.out_degree(u) < cert.d + cert.w) return reject(vname(u) + " in R_v has out-degree below d + w");
    }
  }
  return accept(std::min(cert.l, cert.w));
}

Verdict verify(const Digraph& g, const Obstacle& cert) {
  return std::visit(
      [&](const auto& c) -> Verdict {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, DegreeTangle>) return verify_degree_tangle(g, c);
        if constexpr (std::is_same_v<T, MatchingTangle>) return verify_matching_tangle(g, c);
        if constexpr (std::is_same_v<T, Spider>) return verify_spider(g, c);
      },
      cert);
}

std::size_t wildness(const Digraph& g, Vertex v) {
  if (!in_range(g, v)) throw InputError("wildness: " + vname(v) + " out of range");
  const std::size_t deg = g.out_degree(v);
  std::size_t count = 0;
  for (Vertex u = 0; u < g.order(); ++u) {
    if (g.out_degree(u) <= deg && !g.has_edge(v, u)) ++count;
  }
  return count;
}

namespace {

using Signed = long long;

Signed sz(std::size_t x) { return static_cast<Signed>(x); }

/// Matching-tangle and spider thresholds; `low` selects the T1 / L side.
bool tame_vertex(const Digraph& g, Vertex u, bool low, std::size_t d, std::size_t l, std::size_t w,
                 std::size_t pw_upper) {
  const Signed deg = sz(g.out_degree(u));
  const Signed limit = low ? 3 * sz(l) + sz(d) + sz(w) - deg + 2 * sz(pw_upper)
                           : 3 * sz(l) + deg - sz(d) + 2 * sz(pw_upper);
  return sz(wildness(g, u)) <= limit;
}

}  // namespace

bool verify_tameness(const Digraph& g, const DegreeTangle& cert, std::size_t pw_upper) {
  bool ok = true;
  const Signed limit = 3 * sz(cert.l) + sz(cert.k) + 2 * sz(pw_upper);
  cert.t.for_each([&](Vertex v) { ok = ok && sz(wildness(g, v)) <= limit; });
  return ok;
}

bool verify_tameness(const Digraph& g, const MatchingTangle& cert, std::size_t pw_upper) {
  for (const auto& [v, u] : cert.phi) {
    if (!tame_vertex(g, v, true, cert.d, cert.l, cert.k, pw_upper)) return false;
    if (!tame_vertex(g, u, false, cert.d, cert.l, cert.k, pw_upper)) return false;
  }
  return true;
}

bool verify_tameness(const Digraph& g, const Spider& cert, std::size_t pw_upper) {
  for (const auto& leg : cert.legs) {
    std::size_t left = 0;
    std::size_t right = 0;
    for (Vertex u : leg.left) left += tame_vertex(g, u, true, cert.d, cert.l, cert.w, pw_upper) ? 1 : 0;
    for (Vertex u : leg.right) right += tame_vertex(g, u, false, cert.d, cert.l, cert.w, pw_upper) ? 1 : 0;
    if (left < 2 * cert.l || right < 2 * cert.l) return false;
  }
  return true;
}

bool verify_tameness(const Digraph& g, const Obstacle& cert, std::size_t pw_upper) {
  return std::visit([&](const auto& c) { return verify_tameness(g, c, pw_upper); }, cert);
}

std::size_t degree_interval_count(const Digraph& g, std::size_t d1, std::size_t d2) {
  std::size_t count = 0;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (g.out_degree(v) >= d1 && g.in_degree(v) >= d2) ++count;
  }
  return count;
}

std::size_t degree_interval_lower_bound(const Digraph& g) {
  require_semicomplete(g, "degree_interval_lower_bound");
  const std::size_t n = g.order();
  Signed best = 0;
  for (std::size_t d1 = 0; d1 < n; ++d1) {
    for (std::size_t d2 = 0; d1 + d2 < n; ++d2) {
      const Signed excess = sz(degree_interval_count(g, d1, d2)) - sz(n) + sz(d1) + sz(d2);
      if (excess > 0) best = std::max(best, (excess + 1) / 2);
    }
  }
  return static_cast<std::size_t>(best);
}

std::optional<DegreeTangle> find_degree_tangle(const Digraph& g, std::size_t k) {
  require_semicomplete(g, "find_degree_tangle");
  std::optional<DegreeTangle> best;
  for (std::size_t d = 0; d < g.order(); ++d) {
    VertexSet t(g.order());
    for (Vertex v = 0; v < g.order(); ++v) {
      if (g.out_degree(v) >= d && g.out_degree(v) <= d + k) t.insert(v);
    }
    if (!t.empty() && (!best || t.count() > best->l)) best = DegreeTangle{t, d, t.count(), k};
  }
  return best;
}

std::optional<MatchingTangle> find_matching_tangle(const Digraph& g, std::size_t d, std::size_t k) {
  require_semicomplete(g, "find_matching_tangle");
  const std::size_t n = g.order();
  std::vector<Vertex> low;
  std::vector<bool> high(n, false);
  for (Vertex v = 0; v < n; ++v) {
    if (g.out_degree(v) <= d) low.push_back(v);
    if (g.out_degree(v) >= d + k + 1) high[v] = true;
  }
  // Kuhn's augmenting paths; match_of[u] is the low vertex matched to high u.
  constexpr Vertex kNone = static_cast<Vertex>(-1);
  std::vector<Vertex> match_of(n, kNone);
  std::vector<char> visited;
  auto augment = [&](auto&& self, Vertex v) -> bool {
    for (Vertex u : g.out_list(v)) {
      if (!high[u] || visited[u]) continue;
      visited[u] = 1;
      if (match_of[u] == kNone || self(self, match_of[u])) {
        match_of[u] = v;
        return true;
      }
    }
    return false;
  };
  for (Vertex v : low) {
    visited.assign(n, 0);
    augment(augment, v);
  }
  MatchingTangle out;
  for (Vertex u = 0; u < n; ++u) {
    if (match_of[u] != kNone) out.phi.emplace_back(match_of[u], u);
  }
  if (out.phi.empty()) return std::nullopt;
  std::sort(out.phi.begin(), out.phi.end());
  out.d = d;
  out.l = out.phi.size();
  out.k = k;
  return out;
}

std::optional<MatchingTangle> find_best_matching_tangle(const Digraph& g, std::size_t k) {
  std::optional<MatchingTangle> best;
  for (std::size_t d = 0; d < g.order(); ++d) {
    auto m = find_matching_tangle(g, d, k);
    if (m && (!best || m->l > best->l)) best = std::move(m);
  }
  return best;
}

std::optional<Spider> find_spider(const Digraph& g) {
  require_semicomplete(g, "find_spider");
  const std::size_t n = g.order();
  std::optional<Spider> best;
  std::size_t best_bound = 0;
  for (std::size_t d = 0; d < n; ++d) {
    for (std::size_t w = 1; d + w < n; ++w) {
      for (std::size_t l = 1; 3 * l <= n; ++l) {
        if (std::min(l, w) <= best_bound) continue;
        Spider s{{}, d, l, w};
        for (Vertex v = 0; v < n; ++v) {
          Spider::Leg leg{v, {}, {}};
          for (Vertex u : g.in_list(v)) {
            if (g.out_degree(u) <= d) leg.left.push_back(u);
          }
          for (Vertex u : g.out_list(v)) {
            if (g.out_degree(u) >= d + w) leg.right.push_back(u);
          }
          if (leg.left.size() >= 3 * l && leg.right.size() >= 3 * l) s.legs.push_back(std::move(leg));
        }
        if (s.legs.size() >= l) {
          best_bound = std::min(l, w);
          best = std::move(s);
        }
      }
    }
  }
  return best;
}

std::uint64_t obstacle_scale(std::uint64_t k, std::uint64_t h) { return (h + 1) * k; }
std::uint64_t pathwidth_threshold(std::uint64_t k, std::uint64_t h) { return 128 * (h + 1) * k; }
std::uint64_t sampling_k_threshold(std::uint64_t h) { return 10'000'000ULL * (h + 1) * (h + 1); }

SurvivalReport survival_experiment(const Digraph& g, std::size_t h, std::size_t k, std::uint64_t seed) {
  const std::size_t actual = h_index(g);
  if (actual > h) {
    throw InputError("survival_experiment: digraph is " + std::to_string(actual) + "-semicomplete, above h = " +
                     std::to_string(h));
  }
  SurvivalReport report;
  report.n = g.order();
  report.h = h;
  const Digraph completed = semicomplete_completion(g);
  const auto tangle = find_degree_tangle(completed, k);
  const VertexSet i_set = sample_independent_set(non_adjacency_graph(g), h, seed);
  report.sample_size = i_set.count();

  report.sample_semicomplete = true;
  i_set.for_each([&](Vertex u) {
    i_set.for_each([&](Vertex v) {
      if (u < v && !g.adjacent(u, v)) report.sample_semicomplete = false;
    });
  });
  if (!report.sample_semicomplete) throw std::logic_error("survival_experiment: G[I] is not semicomplete");

  if (tangle) {
    report.tangle_size = tangle->l;
    report.tangle_window = tangle->k;
    report.expected_survivors = static_cast<double>(tangle->l) / (2.0 * static_cast<double>(h + 1));
    const VertexSet survivors = tangle->t & i_set;
    report.survivors = survivors.count();
    if (report.survivors >= 2) {
      std::size_t lo = g.order();
      std::size_t hi = 0;
      survivors.for_each([&](Vertex v) {
        const std::size_t deg = (g.out_neighbors(v) & i_set).count();
        lo = std::min(lo, deg);
        hi = std::max(hi, deg);
      });
      report.degree_spread = hi - lo;
    }
  }
  return report;
}

namespace {

using nlohmann::json;

json vertex_list(const std::vector<Vertex>& vs) { return json(vs); }

std::vector<Vertex> read_vertices(const json& j, std::size_t n, const char* field) {
  if (!j.is_array()) throw InputError(std::string("certificate: '") + field + "' must be an array");
  std::vector<Vertex> out;
  for (const auto& x : j) {
    if (!x.is_number_unsigned() || x.get<std::uint64_t>() >= n) {
      throw InputError(std::string("certificate: '") + field + "' holds an invalid vertex " + x.dump());
    }
    out.push_back(x.get<Vertex>());
  }
  return out;
}

std::size_t read_count(const json& j, const char* field) {
  if (!j.contains(field) || !j.at(field).is_number_unsigned()) {
    throw InputError(std::string("certificate: missing or invalid '") + field + "'");
  }
  return j.at(field).get<std::size_t>();
}

const json& read_field(const json& j, const char* field) {
  if (!j.contains(field)) throw InputError(std::string("certificate: missing '") + field + "'");
  return j.at(field);
}

}  // namespace

std::string write_certificate(const Obstacle& cert) {
  json j;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, DegreeTangle>) {
          j = {{"kind", "degree_tangle"}, {"d", c.d}, {"l", c.l}, {"k", c.k}, {"t", vertex_list(c.t.members())}};
        } else if constexpr (std::is_same_v<T, MatchingTangle>) {
          json phi = json::array();
          for (const auto& [v, u] : c.phi) phi.push_back({v, u});
          j = {{"kind", "matching_tangle"}, {"d", c.d}, {"l", c.l}, {"k", c.k}, {"phi", phi}};
        } else {
          json legs = json::array();
          for (const auto& leg : c.legs) {
            legs.push_back({{"v", leg.v}, {"L", vertex_list(leg.left)}, {"R", vertex_list(leg.right)}});
          }
          j = {{"kind", "spider"}, {"d", c.d}, {"l", c.l}, {"w", c.w}, {"legs", legs}};
        }
      },
      cert);
  return j.dump(2) + "\n";
}

Obstacle read_certificate(const std::string& text, std::size_t n) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("certificate: ") + e.what());
  }
  if (!j.is_object()) throw InputError("certificate: expected a JSON object");
  const json& kind = read_field(j, "kind");
  if (!kind.is_string()) throw InputError("certificate: 'kind' must be a string");
  const auto name = kind.get<std::string>();
  if (name == "degree_tangle") {
    DegreeTangle c{VertexSet(n, read_vertices(read_field(j, "t"), n, "t")), read_count(j, "d"),
                   read_count(j, "l"), read_count(j, "k")};
    return c;
  }
  if (name == "matching_tangle") {
    MatchingTangle c{{}, read_count(j, "d"), read_count(j, "l"), read_count(j, "k")};
    for (const auto& pair : read_field(j, "phi")) {
      const auto vs = read_vertices(pair, n, "phi");
      if (vs.size() != 2) throw InputError("certificate: each 'phi' entry must be a pair");
      c.phi.emplace_back(vs[0], vs[1]);
    }
    return c;
  }
  if (name == "spider") {
    Spider c{{}, read_count(j, "d"), read_count(j, "l"), read_count(j, "w")};
    const json& legs = read_field(j, "legs");
    if (!legs.is_array()) throw InputError("certificate: 'legs' must be an array");
    for (const auto& leg : legs) {
      const auto v = read_vertices(json::array({read_field(leg, "v")}), n, "v");
      c.legs.push_back({v[0], read_vertices(read_field(leg, "L"), n, "L"),
                        read_vertices(read_field(leg, "R"), n, "R")});
    }
    return c;
  }
  throw InputError("certificate: unknown kind '" + name + "'");
}

}  // namespace dipw

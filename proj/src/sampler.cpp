#include "dipw/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <boost/math/distributions/binomial.hpp>

#include "dipw/error.hpp"
#include "dipw/rng.hpp"
#include "edge_list.hpp"

namespace dipw {

UGraph::UGraph(std::size_t n, const std::vector<Edge>& edges) : adj_(n) {
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw InputError("edge {" + std::to_string(u) + ", " + std::to_string(v) +
                       "} has an endpoint outside 0.." + std::to_string(n) + "-1");
    }
    if (u == v) throw InputError("self-loop on vertex " + std::to_string(u));
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (Vertex v = 0; v < n; ++v) {
    auto& list = adj_[v];
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
      const Vertex w = *std::adjacent_find(list.begin(), list.end());
      throw InputError("duplicate edge {" + std::to_string(std::min(v, w)) + ", " +
                       std::to_string(std::max(v, w)) + "}");
    }
  }
  edge_count_ = edges.size();
}

std::size_t UGraph::max_degree() const {
  std::size_t best = 0;
  for (const auto& list : adj_) best = std::max(best, list.size());
  return best;
}

bool UGraph::has_edge(Vertex u, Vertex v) const {
  if (u >= adj_.size()) return false;
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

std::vector<Edge> UGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < adj_.size(); ++u) {
    for (Vertex v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

UGraph UGraph::induced(const VertexSet& keep) const {
  std::vector<Vertex> index(adj_.size(), 0);
  const auto kept = keep.members();
  for (std::size_t i = 0; i < kept.size(); ++i) index[kept[i]] = static_cast<Vertex>(i);
  std::vector<Edge> es;
  for (Vertex u : kept) {
    for (Vertex v : adj_[u]) {
      if (u < v && keep.contains(v)) es.emplace_back(index[u], index[v]);
    }
  }
  return UGraph(kept.size(), es);
}

bool UGraph::is_independent(const VertexSet& set) const {
  bool ok = true;
  set.for_each([&](Vertex v) {
    for (Vertex w : adj_[v]) {
      if (set.contains(w)) ok = false;
    }
  });
  return ok;
}

UGraph non_adjacency_graph(const Digraph& g) {
  std::vector<Edge> es;
  for (Vertex u = 0; u < g.order(); ++u) {
    for (Vertex v = u + 1; v < g.order(); ++v) {
      if (!g.adjacent(u, v)) es.emplace_back(u, v);
    }
  }
  return UGraph(g.order(), es);
}

UGraph random_bounded_degree_graph(std::size_t n, std::size_t d, double density, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Edge> pairs;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  }
  for (std::size_t i = pairs.size(); i > 1; --i) std::swap(pairs[i - 1], pairs[rng.below(i)]);
  std::vector<std::size_t> deg(n, 0);
  std::vector<Edge> es;
  for (const auto& [u, v] : pairs) {
    if (rng.unit() >= density) continue;
    if (deg[u] < d && deg[v] < d) {
      ++deg[u];
      ++deg[v];
      es.emplace_back(u, v);
    }
  }
  std::sort(es.begin(), es.end());
  return UGraph(n, es);
}

UGraph read_ugraph(const std::string& text) {
  const auto parsed = detail::parse_edge_list(text);
  std::set<Edge> seen;
  std::vector<Edge> es;
  es.reserve(parsed.edges.size());
  for (const auto& e : parsed.edges) {
    const Edge key{std::min(e.u, e.v), std::max(e.u, e.v)};
    if (!seen.insert(key).second) {
      throw ParseError(e.line, "duplicate edge {" + std::to_string(key.first) + ", " +
                                   std::to_string(key.second) + "}");
    }
    es.emplace_back(e.u, e.v);
  }
  return UGraph(parsed.n, es);
}

std::string write_ugraph(const UGraph& g) {
  std::ostringstream os;
  os << g.order() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) os << u << ' ' << v << '\n';
  return os.str();
}

bool erdos_kelly_feasible(const std::vector<std::size_t>& degrees, std::size_t d, std::size_t m) {
  std::size_t t = 0;
  std::size_t max_deficit = 0;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (degrees[i] > d) {
      throw InputError("vertex " + std::to_string(i) + " has degree " + std::to_string(degrees[i]) +
                       " > d = " + std::to_string(d));
    }
    t += d - degrees[i];
    max_deficit = std::max(max_deficit, d - degrees[i]);
  }
  const auto mm = static_cast<long long>(m);
  const auto dd = static_cast<long long>(d);
  const auto tt = static_cast<long long>(t);
  return mm * dd >= tt && mm * mm - mm * (dd + 1) + tt >= 0 && m >= max_deficit &&
         ((degrees.size() + m) * d) % 2 == 0;
}

namespace {

/// Mutable graph with at most `cap` neighbours per vertex, stored flat.
/// Edges added as fixed belong to the input graph and are never rotated out.
class BoundedGraph {
 public:
  void reset(std::size_t n, std::size_t cap) {
    n_ = n;
    cap_ = cap;
    nb_.assign(n * cap, 0);
    fixed_.assign(n * cap, 0);
    deg_.assign(n, 0);
  }

  std::size_t order() const { return n_; }
  std::size_t degree(Vertex v) const { return deg_[v]; }
  const Vertex* begin(Vertex v) const { return nb_.data() + v * cap_; }
  const Vertex* end(Vertex v) const { return begin(v) + deg_[v]; }
  bool fixed(Vertex v, std::size_t slot) const { return fixed_[v * cap_ + slot] != 0; }

  bool has(Vertex u, Vertex w) const { return std::find(begin(u), end(u), w) != end(u); }

  void add(Vertex u, Vertex w, bool fixed = false) {
    fixed_[u * cap_ + deg_[u]] = fixed;
    nb_[u * cap_ + deg_[u]++] = w;
    fixed_[w * cap_ + deg_[w]] = fixed;
    nb_[w * cap_ + deg_[w]++] = u;
  }

  void remove(Vertex u, Vertex w) {
    drop(u, w);
    drop(w, u);
  }

 private:
  void drop(Vertex u, Vertex w) {
    const std::size_t base = u * cap_;
    const std::size_t last = base + --deg_[u];
    const std::size_t pos = static_cast<std::size_t>(std::find(nb_.data() + base, nb_.data() + last + 1, w) - nb_.data());
    nb_[pos] = nb_[last];
    fixed_[pos] = fixed_[last];
  }

  std::size_t n_ = 0;
  std::size_t cap_ = 0;
  std::vector<Vertex> nb_;
  std::vector<char> fixed_;
  std::vector<std::uint32_t> deg_;
};

/// Joins the lowest-indexed non-adjacent pair of deficient vertices until
/// none is left. Deficient vertices are kept in an index-ordered linked list.
void greedy_fill(BoundedGraph& h, std::size_t d, std::vector<Vertex>& next, std::vector<Vertex>& prev) {
  const std::size_t n = h.order();
  const auto end = static_cast<Vertex>(n);
  next.assign(n + 1, end);
  prev.assign(n + 1, end);
  Vertex last = end;  // sentinel slot n acts as the head
  for (Vertex v = 0; v < n; ++v) {
    if (h.degree(v) >= d) continue;
    next[last] = v;
    prev[v] = last;
    last = v;
  }
  next[last] = end;
  auto unlink = [&](Vertex v) {
    next[prev[v]] = next[v];
    if (next[v] != end) prev[next[v]] = prev[v];
  };
  for (Vertex u = next[end]; u != end; u = next[u]) {
    for (Vertex w = next[u]; w != end && h.degree(u) < d;) {
      const Vertex after = next[w];
      if (!h.has(u, w)) {
        h.add(u, w);
        if (h.degree(w) == d) unlink(w);
      }
      w = after;
    }
    if (h.degree(u) == d) unlink(u);
  }
}

/// Finds an edge {x, y} (returned oriented) with x not in N[a] and y not in
/// N[b]; x == y never happens since the graph is simple.
bool find_rotation_edge(const BoundedGraph& h, Vertex a, Vertex b, Vertex& x, Vertex& y) {
  for (Vertex p = 0; p < h.order(); ++p) {
    for (std::size_t slot = 0; slot < h.degree(p); ++slot) {
      const Vertex q = h.begin(p)[slot];
      if (q < p || h.fixed(p, slot)) continue;
      for (int flip = 0; flip < 2; ++flip) {
        const Vertex cx = flip ? q : p;
        const Vertex cy = flip ? p : q;
        if (cx != a && cy != b && !h.has(a, cx) && !h.has(b, cy)) {
          x = cx;
          y = cy;
          return true;
        }
      }
    }
  }
  return false;
}

void complete_in_place(BoundedGraph& h, std::size_t d, std::vector<Vertex>& next, std::vector<Vertex>& prev) {
  const std::size_t limit = h.order() * d + 16;
  for (std::size_t step = 0;; ++step) {
    greedy_fill(h, d, next, prev);
    std::vector<Vertex> deficient;
    for (Vertex v = 0; v < h.order(); ++v) {
      if (h.degree(v) < d) deficient.push_back(v);
    }
    if (deficient.empty()) return;
    if (step > limit) throw std::logic_error("regular_completion: repair loop did not terminate");
    const Vertex u = deficient[0];
    Vertex x = 0;
    Vertex y = 0;
    if ((d - h.degree(u) >= 2 || deficient.size() == 1) && find_rotation_edge(h, u, u, x, y)) {
      h.remove(x, y);
      h.add(u, x);
      h.add(u, y);
      continue;
    }
    if (deficient.size() >= 2) {
      const Vertex w = deficient[1];
      if (find_rotation_edge(h, u, w, x, y)) {
        h.remove(x, y);
        h.add(u, x);
        h.add(w, y);
        continue;
      }
    }
    throw std::logic_error("regular_completion: no rotation edge for deficient vertex " + std::to_string(u));
  }
}

void check_completion_args(std::size_t n, std::size_t max_deg, std::size_t d, std::size_t total) {
  if (max_deg > d) {
    throw InputError("graph has maximum degree " + std::to_string(max_deg) + " > d = " + std::to_string(d));
  }
  if (total < n + d + 1) {
    throw InputError("N = " + std::to_string(total) + " is below n + d + 1 = " + std::to_string(n + d + 1));
  }
  if ((total * d) % 2 != 0) {
    throw InputError("N * d = " + std::to_string(total * d) + " is odd");
  }
}

/// Reusable buffers for one sampler thread.
struct Workspace {
  BoundedGraph h;
  std::vector<Vertex> next;
  std::vector<Vertex> prev;
  std::vector<Vertex> members;
  std::vector<Vertex> position;
};

/// Builds H_i for V_i into ws.h; ws.members holds V_i ascending.
void build_round_graph(const UGraph& g, std::size_t d, const VertexSet& v_set, std::size_t total,
                       Workspace& ws) {
  ws.members = v_set.members();
  ws.position.assign(g.order(), 0);
  for (std::size_t i = 0; i < ws.members.size(); ++i) ws.position[ws.members[i]] = static_cast<Vertex>(i);
  ws.h.reset(total, d);
  for (Vertex a : ws.members) {
    for (Vertex b : g.neighbors(a)) {
      if (a < b && v_set.contains(b)) ws.h.add(ws.position[a], ws.position[b], true);
    }
  }
  complete_in_place(ws.h, d, ws.next, ws.prev);
}

UGraph to_ugraph(const BoundedGraph& h) {
  std::vector<Edge> es;
  for (Vertex u = 0; u < h.order(); ++u) {
    for (const Vertex* it = h.begin(u); it != h.end(u); ++it) {
      if (u < *it) es.emplace_back(u, *it);
    }
  }
  std::sort(es.begin(), es.end());
  return UGraph(h.order(), es);
}

RoundStep apply_draw(const Workspace& ws, const VertexSet& v_set, std::size_t draw) {
  RoundStep out{std::nullopt, v_set};
  const auto x = static_cast<Vertex>(draw);
  const std::size_t inside = ws.members.size();
  if (draw < inside) {
    out.added = ws.members[draw];
    out.next.erase(ws.members[draw]);
  }
  for (const Vertex* it = ws.h.begin(x); it != ws.h.end(x); ++it) {
    if (*it < inside) out.next.erase(ws.members[*it]);
  }
  return out;
}

VertexSet run_sampler(const UGraph& g, std::size_t d, std::size_t s, std::uint64_t seed, Workspace& ws) {
  SplitMix64 rng(seed);
  VertexSet v_set = VertexSet::full(g.order());
  VertexSet i_set(g.order());
  for (std::size_t i = 0; i < s; ++i) {
    const std::size_t n_i = (2 * s - i) * (d + 1);
    if (n_i < v_set.count() + d + 1) throw std::logic_error("sampler: n_i < |V_i| + d + 1");
    build_round_graph(g, d, v_set, n_i, ws);
    const RoundStep st = apply_draw(ws, v_set, rng.below(n_i));
    if (st.added) i_set.insert(*st.added);
    v_set = st.next;
    bool ok = true;
    i_set.for_each([&](Vertex v) {
      for (Vertex w : g.neighbors(v)) {
        if (i_set.contains(w) || v_set.contains(w)) ok = false;
      }
    });
    if (!ok) throw std::logic_error("sampler: invariant broken in round " + std::to_string(i));
  }
  return i_set;
}

}  // namespace

UGraph regular_completion(const UGraph& g, std::size_t d, std::size_t total) {
  check_completion_args(g.order(), g.max_degree(), d, total);
  Workspace ws;
  ws.h.reset(total, d);
  for (const auto& [u, v] : g.edges()) ws.h.add(u, v, true);
  complete_in_place(ws.h, d, ws.next, ws.prev);
  UGraph out = to_ugraph(ws.h);
  for (Vertex v = 0; v < total; ++v) {
    if (out.degree(v) != d) throw std::logic_error("regular_completion: output is not regular");
  }
  for (const auto& [u, v] : g.edges()) {
    if (!out.has_edge(u, v)) throw std::logic_error("regular_completion: lost an input edge");
  }
  return out;
}

double sampler_marginal(std::size_t d) { return 1.0 / (2.0 * static_cast<double>(d + 1)); }

IndependentSetSampler::IndependentSetSampler(UGraph g, std::size_t d)
    : g_(std::move(g)), d_(d), s_((g_.order() + d) / (d + 1)) {
  if (g_.max_degree() > d_) {
    throw InputError("graph has maximum degree " + std::to_string(g_.max_degree()) + " > d = " +
                     std::to_string(d_));
  }
}

std::size_t IndependentSetSampler::pool_size(std::size_t round) const {
  if (round >= s_) throw InputError("round " + std::to_string(round) + " out of range");
  return (2 * s_ - round) * (d_ + 1);
}

UGraph IndependentSetSampler::completion(const VertexSet& v_set, std::size_t round) const {
  require_universe(v_set);
  Workspace ws;
  build_round_graph(g_, d_, v_set, pool_size(round), ws);
  return to_ugraph(ws.h);
}

RoundStep IndependentSetSampler::step(const VertexSet& v_set, std::size_t round, std::size_t draw) const {
  require_universe(v_set);
  const std::size_t n_i = pool_size(round);
  if (draw >= n_i) throw InputError("draw " + std::to_string(draw) + " outside [0, " + std::to_string(n_i) + ")");
  Workspace ws;
  build_round_graph(g_, d_, v_set, n_i, ws);
  return apply_draw(ws, v_set, draw);
}

VertexSet IndependentSetSampler::sample(std::uint64_t seed) const {
  Workspace ws;
  return run_sampler(g_, d_, s_, seed, ws);
}

void IndependentSetSampler::require_universe(const VertexSet& v_set) const {
  if (v_set.universe() != g_.order()) throw InputError("vertex set universe does not match the graph");
}

VertexSet sample_independent_set(const UGraph& g, std::size_t d, std::uint64_t seed) {
  return IndependentSetSampler(g, d).sample(seed);
}

bool MarginalReport::marginals_ok() const {
  return dependent_samples == 0 &&
         std::all_of(vertices.begin(), vertices.end(), [](const VertexMarginal& m) { return m.consistent; });
}

bool MarginalReport::tails_ok() const {
  return std::all_of(tails.begin(), tails.end(), [](const TailRow& r) { return r.upper_ok && r.lower_ok; });
}

namespace {

std::string format(const char* fmt, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, a);
  return buf;
}

}  // namespace

std::string MarginalReport::to_table() const {
  std::ostringstream os;
  os << "trials " << trials << "  d " << d << "  p " << format("%.6f", p) << "  confidence "
     << format("%.4f", confidence) << "  dependent " << dependent_samples << '\n';
  char line[160];
  std::snprintf(line, sizeof line, "%6s %8s %10s %10s %10s %4s\n", "vertex", "hits", "freq", "ci_low",
                "ci_high", "ok");
  os << line;
  for (const auto& m : vertices) {
    std::snprintf(line, sizeof line, "%6u %8zu %10.6f %10.6f %10.6f %4s\n", m.v, m.hits, m.frequency, m.ci_low,
                  m.ci_high, m.consistent ? "yes" : "NO");
    os << line;
  }
  if (!tails.empty()) {
    std::snprintf(line, sizeof line, "%6s %6s %4s %12s %12s %10s %10s %4s\n", "set", "size", "t", "emp_upper",
                  "emp_lower", "bound", "slack", "ok");
    os << line;
    for (const auto& r : tails) {
      std::snprintf(line, sizeof line, "%6zu %6zu %4zu %12.6f %12.6f %10.6f %10.6f %4s\n", r.set_id, r.set_size,
                    r.t, r.empirical_upper, r.empirical_lower, r.bound, r.slack,
                    (r.upper_ok && r.lower_ok) ? "yes" : "NO");
      os << line;
    }
  }
  return os.str();
}

std::string MarginalReport::to_csv() const {
  std::ostringstream os;
  os << "set_id,t,empirical_upper,bound,empirical_lower\n";
  char line[128];
  for (const auto& r : tails) {
    std::snprintf(line, sizeof line, "%zu,%zu,%.8g,%.8g,%.8g\n", r.set_id, r.t, r.empirical_upper, r.bound,
                  r.empirical_lower);
    os << line;
  }
  return os.str();
}

MarginalReport marginal_and_tail_check(const UGraph& g, std::size_t d, std::size_t trials,
                                       const std::vector<VertexSet>& target_sets, std::uint64_t seed,
                                       std::size_t jobs, double confidence) {
  if (trials == 0) throw InputError("trials must be at least 1");
  if (!(confidence > 0.0 && confidence < 1.0)) throw InputError("confidence must lie in (0, 1)");
  for (const auto& set : target_sets) {
    if (set.universe() != g.order()) throw InputError("target set universe does not match the graph");
  }
  const IndependentSetSampler sampler(g, d);
  const std::size_t n = g.order();

  struct Tally {
    std::vector<std::size_t> hits;
    std::vector<std::vector<std::size_t>> histograms;
    std::size_t dependent = 0;
  };
  auto fresh = [&] {
    Tally t;
    t.hits.assign(n, 0);
    for (const auto& set : target_sets) t.histograms.emplace_back(set.count() + 1, 0);
    return t;
  };

  jobs = std::max<std::size_t>(1, std::min(jobs, trials));
  std::vector<Tally> tallies(jobs);
  auto worker = [&](std::size_t job) {
    Tally tally = fresh();
    Workspace ws;
    const std::size_t lo = trials * job / jobs;
    const std::size_t hi = trials * (job + 1) / jobs;
    for (std::size_t j = lo; j < hi; ++j) {
      const VertexSet i_set = run_sampler(g, d, sampler.rounds(), derive_seed(seed, j), ws);
      if (!g.is_independent(i_set)) ++tally.dependent;
      i_set.for_each([&](Vertex v) { ++tally.hits[v]; });
      for (std::size_t k = 0; k < target_sets.size(); ++k) ++tally.histograms[k][(i_set & target_sets[k]).count()];
    }
    tallies[job] = std::move(tally);
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t job = 0; job < jobs; ++job) pool.emplace_back(worker, job);
    for (auto& th : pool) th.join();
  }
  Tally total = fresh();
  for (const auto& t : tallies) {
    total.dependent += t.dependent;
    for (std::size_t v = 0; v < n; ++v) total.hits[v] += t.hits[v];
    for (std::size_t k = 0; k < target_sets.size(); ++k) {
      for (std::size_t x = 0; x < t.histograms[k].size(); ++x) total.histograms[k][x] += t.histograms[k][x];
    }
  }

  MarginalReport report;
  report.trials = trials;
  report.d = d;
  report.p = sampler_marginal(d);
  report.confidence = confidence;
  report.dependent_samples = total.dependent;
  const double alpha = (1.0 - confidence) / 2.0;
  const auto tr = static_cast<double>(trials);
  using boost::math::binomial_distribution;
  for (Vertex v = 0; v < n; ++v) {
    VertexMarginal m;
    m.v = v;
    m.hits = total.hits[v];
    m.frequency = static_cast<double>(m.hits) / tr;
    const auto k = static_cast<double>(m.hits);
    m.ci_low = binomial_distribution<>::find_lower_bound_on_p(tr, k, alpha);
    m.ci_high = binomial_distribution<>::find_upper_bound_on_p(tr, k, alpha);
    m.consistent = m.ci_low <= report.p && report.p <= m.ci_high;
    report.vertices.push_back(m);
  }

  const std::size_t scale = 2 * (d + 1);
  for (std::size_t k = 0; k < target_sets.size(); ++k) {
    const std::size_t size = target_sets[k].count();
    if (size == 0) continue;
    const auto& hist = total.histograms[k];
    const auto t_max = static_cast<std::size_t>(std::ceil(3.0 * std::sqrt(static_cast<double>(size))));
    for (std::size_t t = 1; t <= t_max; ++t) {
      std::size_t upper = 0;
      std::size_t lower = 0;
      for (std::size_t x = 0; x < hist.size(); ++x) {
        // x > p|S| + t and x < p|S| - t, scaled by 2(d+1) to stay exact.
        if (scale * x > size + scale * t) upper += hist[x];
        if (scale * x + scale * t < size) lower += hist[x];
      }
      TailRow row;
      row.set_id = k;
      row.set_size = size;
      row.t = t;
      row.empirical_upper = static_cast<double>(upper) / tr;
      row.empirical_lower = static_cast<double>(lower) / tr;
      const double tt = static_cast<double>(t * t);
      const double ss = static_cast<double>(size);
      row.bound = std::exp(-tt / (9.0 * ss));
      row.bound_tight = std::exp(-tt / (6.0 * ss));
      row.slack = 3.0 * std::sqrt(row.bound * (1.0 - row.bound) / tr);
      row.upper_ok = row.empirical_upper <= row.bound + row.slack;
      row.lower_ok = row.empirical_lower <= row.bound + row.slack;
      report.tails.push_back(row);
    }
  }
  return report;
}

}  // namespace dipw

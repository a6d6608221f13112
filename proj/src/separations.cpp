#include "dipw/separations.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "dipw/error.hpp"

namespace dipw {
namespace {

void require_disjoint(const Digraph& g, const VertexSet& s, const VertexSet& t, const char* what) {
  require_within(g, s, what);
  require_within(g, t, what);
  if (s.intersects(t)) {
    throw InputError(std::string(what) + ": S and T overlap in {" + (s & t).to_string() + "}");
  }
}

/// Residual network for vertex-capacitated S-T cuts. Each vertex v is split
/// into in(v) = 2v and out(v) = 2v+1 joined by a unit arc (infinite inside
/// S u T); graph edges become infinite out(x) -> in(y) arcs.
class SplitFlowNetwork {
 public:
  SplitFlowNetwork(const Digraph& g, const VertexSet& s, const VertexSet& t)
      : n_(g.order()), source_(2 * n_), sink_(2 * n_ + 1), adj_(2 * n_ + 2) {
    const int inf = static_cast<int>(n_) + 1;
    for (Vertex v = 0; v < n_; ++v) {
      const bool terminal = s.contains(v) || t.contains(v);
      add_arc(in(v), out(v), terminal ? inf : 1);
      for (Vertex w : g.out_list(v)) add_arc(out(v), in(w), inf);
    }
    s.for_each([&](Vertex v) { add_arc(source_, out(v), inf); });
    t.for_each([&](Vertex v) { add_arc(in(v), sink_, inf); });
  }

  /// Augments until no path remains or the flow exceeds `limit`.
  std::size_t run(std::size_t limit) {
    std::size_t flow = 0;
    std::vector<std::pair<std::size_t, std::size_t>> parent(adj_.size());
    std::vector<std::size_t> queue;
    queue.reserve(adj_.size());
    while (flow <= limit) {
      std::fill(parent.begin(), parent.end(), std::pair{kNone, kNone});
      parent[source_] = {source_, kNone};
      queue.clear();
      queue.push_back(source_);
      for (std::size_t head = 0; head < queue.size() && parent[sink_].first == kNone; ++head) {
        const std::size_t x = queue[head];
        for (std::size_t i = 0; i < adj_[x].size(); ++i) {
          const Arc& a = adj_[x][i];
          if (a.cap > 0 && parent[a.to].first == kNone) {
            parent[a.to] = {x, i};
            queue.push_back(a.to);
          }
        }
      }
      if (parent[sink_].first == kNone) break;
      // Every source-sink path crosses a unit arc, so each augmentation adds 1.
      for (std::size_t y = sink_; y != source_;) {
        auto [x, i] = parent[y];
        Arc& a = adj_[x][i];
        a.cap -= 1;
        adj_[a.to][a.rev].cap += 1;
        y = x;
      }
      ++flow;
    }
    return flow;
  }

  /// Nodes reachable from the source in the residual network.
  std::vector<char> reachable() const {
    std::vector<char> seen(adj_.size(), 0);
    std::vector<std::size_t> stack{source_};
    seen[source_] = 1;
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      for (const Arc& a : adj_[x]) {
        if (a.cap > 0 && !seen[a.to]) {
          seen[a.to] = 1;
          stack.push_back(a.to);
        }
      }
    }
    return seen;
  }

  static std::size_t in(Vertex v) { return 2 * static_cast<std::size_t>(v); }
  static std::size_t out(Vertex v) { return 2 * static_cast<std::size_t>(v) + 1; }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  struct Arc {
    std::size_t to;
    std::size_t rev;
    int cap;
  };

  void add_arc(std::size_t from, std::size_t to, int cap) {
    adj_[from].push_back({to, adj_[to].size(), cap});
    adj_[to].push_back({from, adj_[from].size() - 1, 0});
  }

  std::size_t n_;
  std::size_t source_;
  std::size_t sink_;
  std::vector<std::vector<Arc>> adj_;
};

std::optional<Separation> min_separation_impl(const Digraph& g, const VertexSet& s,
                                              const VertexSet& t, std::size_t limit) {
  if (g.out_closed(s).intersects(t)) return std::nullopt;
  SplitFlowNetwork net(g, s, t);
  const std::size_t flow = net.run(limit);
  if (flow > limit) return std::nullopt;

  const auto seen = net.reachable();
  const std::size_t n = g.order();
  VertexSet strict_a(n);
  VertexSet cut(n);
  for (Vertex v = 0; v < n; ++v) {
    const bool in_seen = seen[SplitFlowNetwork::in(v)] != 0;
    const bool out_seen = seen[SplitFlowNetwork::out(v)] != 0;
    if (out_seen) {
      strict_a.insert(v);
    } else if (in_seen) {
      cut.insert(v);
    }
  }
  Separation sep{strict_a | cut, strict_a.complement()};
  if (!is_st_separation(g, sep, s, t) || sep.order() != flow) {
    throw std::logic_error("min_st_separation: recovered cut is not a separation of the flow value");
  }
  return sep;
}

}  // namespace

bool is_separation(const Digraph& g, const VertexSet& a, const VertexSet& b) {
  require_within(g, a, "is_separation");
  require_within(g, b, "is_separation");
  if ((a | b) != g.all()) return false;
  const VertexSet a_only = a - b;
  const VertexSet b_only = b - a;
  bool ok = true;
  a_only.for_each([&](Vertex v) {
    if (ok && g.out_neighbors(v).intersects(b_only)) ok = false;
  });
  return ok;
}

bool is_st_separation(const Digraph& g, const Separation& sep, const VertexSet& s,
                      const VertexSet& t) {
  return is_separation(g, sep) && !s.intersects(sep.b) && !t.intersects(sep.a);
}

Separation left_trivial(const Digraph& g, const VertexSet& s) {
  return {g.out_closed(s), s.complement()};
}

Separation right_trivial(const Digraph& g, const VertexSet& t) {
  return {t.complement(), g.in_closed(t)};
}

std::optional<Separation> min_st_separation(const Digraph& g, const VertexSet& s,
                                            const VertexSet& t) {
  require_disjoint(g, s, t, "min_st_separation");
  return min_separation_impl(g, s, t, g.order());
}

std::optional<Separation> min_st_separation_bounded(const Digraph& g, const VertexSet& s,
                                                    const VertexSet& t, std::size_t limit) {
  require_disjoint(g, s, t, "min_st_separation_bounded");
  return min_separation_impl(g, s, t, limit);
}

std::optional<Separation> find_nontrivial_min_separation(const Digraph& g, const VertexSet& s,
                                                         const VertexSet& t) {
  require_disjoint(g, s, t, "find_nontrivial_min_separation");
  const auto leftmost = min_separation_impl(g, s, t, g.order());
  if (!leftmost) return std::nullopt;
  const std::size_t order = leftmost->order();
  const VertexSet not_t = t.complement();
  auto nontrivial = [&](const Separation& sep) {
    return (sep.a - sep.b) != s && sep.a != not_t;
  };
  if (nontrivial(*leftmost)) return leftmost;

  // A non-trivial minimum separation with u in X\Y exists iff the leftmost
  // minimum (S+u)-T separation has the same order and X != V\T: every other
  // minimum separation containing u on the left has a larger X.
  const VertexSet middle = (s | t).complement();
  std::optional<Separation> found;
  middle.for_each([&](Vertex u) {
    if (found || g.out_neighbors(u).intersects(t)) return;
    auto sep = min_separation_impl(g, s.with(u), t, order);
    if (sep && sep->order() == order && sep->a != not_t) found = std::move(sep);
  });
  return found;
}

std::size_t gamma(const Digraph& g, const VertexSet& s, const VertexSet& t) {
  require_disjoint(g, s, t, "gamma");
  const auto sep = min_separation_impl(g, s, t, g.order());
  return sep ? sep->order() : kInfiniteOrder;
}

std::size_t mu(const Digraph& g, const VertexSet& s, const VertexSet& t) {
  require_disjoint(g, s, t, "mu");
  const VertexSet out_s = g.out_closed(s);
  const VertexSet in_t = g.in_closed(t);
  const std::size_t outside = (out_s | in_t).complement().count();
  const std::size_t sym = ((out_s - s) ^ (in_t - t)).count();
  return 2 * outside + sym;
}

std::size_t mu_prime(const Digraph& g, const VertexSet& s, const VertexSet& t) {
  const std::size_t m = mu(g, s, t);
  return m == 0 ? 0 : 2 * m - 1;
}

std::size_t SeparationChain::order() const {
  std::size_t best = 0;
  for (const auto& sep : seps) best = std::max(best, sep.order());
  return best;
}

void SeparationChain::push_back(const Separation& sep) {
  if (seps.empty() || !(seps.back() == sep)) seps.push_back(sep);
}

void SeparationChain::append(const SeparationChain& other) {
  for (const auto& sep : other.seps) push_back(sep);
}

ChainReport chain_predicates(const Digraph& g, const SeparationChain& c, const VertexSet& s,
                             const VertexSet& t) {
  require_within(g, s, "chain_predicates");
  require_within(g, t, "chain_predicates");
  ChainReport r;
  r.order = c.order();
  r.is_chain = true;
  r.is_gapless = true;
  r.is_nice = true;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& cur = c.seps[i];
    if (cur.a.universe() != g.order() || cur.b.universe() != g.order() || !is_separation(g, cur)) {
      r.is_chain = false;
      continue;
    }
    if (i == 0) continue;
    const auto& prev = c.seps[i - 1];
    if (!prev.a.is_subset_of(cur.a) || !cur.b.is_subset_of(prev.b)) r.is_chain = false;
    const std::size_t a_step = (cur.a - prev.a).count();
    const std::size_t b_step = (prev.b - cur.b).count();
    if (a_step > 1 && b_step > 1) r.is_gapless = false;
    if (a_step > 1 || b_step > 1) r.is_nice = false;
  }
  if (!c.empty() && r.is_chain) {
    r.is_st_chain = c.front().b == s.complement() && c.back().a == t.complement();
    r.is_tight = c.front().a == g.out_closed(s) && c.back().b == g.in_closed(t);
  }
  return r;
}

std::size_t PathDecomposition::width() const {
  std::size_t best = 0;
  for (const auto& bag : bags) best = std::max(best, bag.count());
  return best == 0 ? 0 : best - 1;
}

DecompositionReport validate_decomposition(const Digraph& g, const PathDecomposition& pd) {
  DecompositionReport r;
  r.width = pd.width();
  const std::size_t n = g.order();
  for (std::size_t i = 0; i < pd.bags.size(); ++i) {
    if (pd.bags[i].universe() != n) {
      r.violation = "bag " + std::to_string(i + 1) + " has universe " +
                    std::to_string(pd.bags[i].universe()) + ", graph has " + std::to_string(n) +
                    " vertices";
      return r;
    }
  }
  constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);
  std::vector<std::size_t> first(n, kAbsent);
  std::vector<std::size_t> last(n, kAbsent);
  std::vector<std::size_t> hits(n, 0);
  for (std::size_t i = 0; i < pd.bags.size(); ++i) {
    pd.bags[i].for_each([&](Vertex v) {
      if (first[v] == kAbsent) first[v] = i;
      last[v] = i;
      ++hits[v];
    });
  }
  for (Vertex v = 0; v < n; ++v) {
    if (first[v] == kAbsent) {
      r.violation = "cover: vertex " + std::to_string(v) + " is in no bag";
      return r;
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (hits[v] != last[v] - first[v] + 1) {
      r.violation = "contiguity: bags containing vertex " + std::to_string(v) +
                    " do not form an interval";
      return r;
    }
  }
  for (const auto& [u, v] : g.edges()) {
    if (last[u] < first[v]) {
      r.violation = "edge " + std::to_string(u) + " -> " + std::to_string(v) + ": tail last seen in bag " +
                    std::to_string(last[u] + 1) + ", head first seen in bag " +
                    std::to_string(first[v] + 1);
      return r;
    }
  }
  r.valid = true;
  return r;
}

PathDecomposition chain_to_decomposition(const Digraph& g, const SeparationChain& c) {
  const std::size_t n = g.order();
  if (c.empty()) throw InputError("chain_to_decomposition: empty chain");
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& cur = c.seps[i];
    if (cur.a.universe() != n || cur.b.universe() != n || !is_separation(g, cur)) {
      throw InputError("chain_to_decomposition: member " + std::to_string(i) +
                       " is not a separation");
    }
    if (i == 0) continue;
    const auto& prev = c.seps[i - 1];
    if (!prev.a.is_subset_of(cur.a) || !cur.b.is_subset_of(prev.b)) {
      throw InputError("chain_to_decomposition: members " + std::to_string(i - 1) + " and " +
                       std::to_string(i) + " are not nested");
    }
    if ((cur.a - prev.a).count() > 1 && (prev.b - cur.b).count() > 1) {
      throw InputError("chain_to_decomposition: gap between members " + std::to_string(i - 1) +
                       " and " + std::to_string(i));
    }
  }
  const VertexSet all = g.all();
  if (c.front().b != all) throw InputError("chain_to_decomposition: member 0 has B != V");
  if (c.back().a != all) {
    throw InputError("chain_to_decomposition: member " + std::to_string(c.size() - 1) +
                     " has A != V");
  }

  PathDecomposition pd;
  if (c.size() == 1) {
    pd.bags.push_back(all);
    return pd;
  }
  for (std::size_t i = 1; i < c.size(); ++i) pd.bags.push_back(c.seps[i].a & c.seps[i - 1].b);
  return pd;
}

SeparationChain ordering_to_chain(const Digraph& g, const std::vector<Vertex>& ordering) {
  const std::size_t n = g.order();
  VertexSet prefix(n);
  if (ordering.size() != n) throw InputError("ordering_to_chain: ordering is not a permutation");
  SeparationChain c;
  c.seps.push_back({g.out_closed(prefix), prefix.complement()});
  for (Vertex v : ordering) {
    if (v >= n || prefix.contains(v)) {
      throw InputError("ordering_to_chain: ordering is not a permutation");
    }
    prefix.insert(v);
    c.seps.push_back({g.out_closed(prefix), prefix.complement()});
  }
  return c;
}

std::size_t ordering_width(const Digraph& g, const std::vector<Vertex>& ordering) {
  return ordering_to_chain(g, ordering).order();
}

std::string write_decomposition(const PathDecomposition& pd) {
  std::ostringstream os;
  os << "width " << pd.width() << '\n' << "bags " << pd.bags.size() << '\n';
  for (const auto& bag : pd.bags) os << bag.to_string() << '\n';
  return os.str();
}

namespace {

std::vector<Vertex> parse_members(const std::string& text, std::size_t n, std::size_t line) {
  std::vector<Vertex> out;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    std::size_t v = 0;
    const char* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, v);
    if (ec != std::errc{} || ptr != end) throw ParseError(line, "bad vertex index '" + tok + "'");
    if (v >= n) throw ParseError(line, "vertex " + tok + " out of range for n = " + std::to_string(n));
    out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

std::size_t parse_keyword_count(const std::string& line, const std::string& keyword, std::size_t line_no) {
  std::istringstream is(line);
  std::string kw;
  std::size_t value = 0;
  std::string rest;
  if (!(is >> kw >> value) || kw != keyword || (is >> rest)) {
    throw ParseError(line_no, "expected '" + keyword + " <count>'");
  }
  return value;
}

}  // namespace

PathDecomposition read_decomposition(const std::string& text, std::size_t n) {
  std::istringstream is(text);
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(is, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };
  if (!next_line()) throw ParseError(0, "missing 'width' line");
  const std::size_t declared_width = parse_keyword_count(line, "width", line_no);
  if (!next_line()) throw ParseError(0, "missing 'bags' line");
  const std::size_t bag_count = parse_keyword_count(line, "bags", line_no);

  PathDecomposition pd;
  for (std::size_t i = 0; i < bag_count; ++i) {
    if (!next_line()) line.clear();  // trailing empty bags may lack a newline
    pd.bags.emplace_back(n, parse_members(line, n, line_no));
  }
  while (next_line()) {
    if (line.find_first_not_of(" \t") != std::string::npos) {
      throw ParseError(line_no, "unexpected content after " + std::to_string(bag_count) + " bags");
    }
  }
  if (pd.width() != declared_width) {
    throw ParseError(1, "declared width " + std::to_string(declared_width) + " but bags have width " +
                            std::to_string(pd.width()));
  }
  return pd;
}

std::string write_chain(const SeparationChain& c) {
  std::ostringstream os;
  for (const auto& sep : c.seps) os << sep.a.to_string() << " | " << sep.b.to_string() << '\n';
  return os.str();
}

SeparationChain read_chain(const std::string& text, std::size_t n) {
  std::istringstream is(text);
  std::string line;
  std::size_t line_no = 0;
  SeparationChain c;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto bar = line.find('|');
    if (bar == std::string::npos) throw ParseError(line_no, "expected 'A-members | B-members'");
    c.seps.push_back({VertexSet(n, parse_members(line.substr(0, bar), n, line_no)),
                      VertexSet(n, parse_members(line.substr(bar + 1), n, line_no))});
  }
  return c;
}

}  // namespace dipw

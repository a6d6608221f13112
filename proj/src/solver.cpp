#include "dipw/solver.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

#include "dipw/error.hpp"

namespace dipw {

bool is_admissible(const Digraph& g, const Instance& inst) {
  return !g.out_closed(inst.s).intersects(inst.t) && g.d_plus(inst.s) <= inst.k &&
         g.d_minus(inst.t) <= inst.k;
}

void SolveStats::merge(const SolveStats& other) {
  instance_count += other.instance_count;
  base_count += other.base_count;
  max_depth = std::max(max_depth, other.max_depth);
  divide_count += other.divide_count;
  branch_count += other.branch_count;
  memo_hits += other.memo_hits;
  max_fanout_left = std::max(max_fanout_left, other.max_fanout_left);
  max_fanout_right = std::max(max_fanout_right, other.max_fanout_right);
  divide_mu_violations += other.divide_mu_violations;
  mu_increase_violations += other.mu_increase_violations;
  gamma_violations += other.gamma_violations;
}

const char* to_string(TraceAction action) {
  switch (action) {
    case TraceAction::kBase:
      return "base";
    case TraceAction::kDivide:
      return "divide";
    case TraceAction::kBranchBoth:
      return "branch-both";
    case TraceAction::kBranchLeft:
      return "branch-left";
    case TraceAction::kBranchRight:
      return "branch-right";
    case TraceAction::kRefuse:
      return "refuse";
  }
  return "?";
}

namespace {

void check_instance(const Digraph& g, const Instance& inst, const char* what) {
  require_within(g, inst.s, what);
  require_within(g, inst.t, what);
  if (inst.s.intersects(inst.t)) throw InputError(std::string(what) + ": S and T overlap");
  if (!is_admissible(g, inst)) {
    throw InputError(std::string(what) + ": (S, T) is not " + std::to_string(inst.k) +
                     "-admissible");
  }
}

/// Prepends (N+[S], V\S) and appends (V\T, N-[T]) unless already present.
SeparationChain make_tight(const Digraph& g, const VertexSet& s, const VertexSet& t,
                           SeparationChain chain) {
  const Separation left = left_trivial(g, s);
  if (chain.empty() || !(chain.front() == left)) chain.seps.insert(chain.seps.begin(), left);
  chain.push_back(right_trivial(g, t));
  return chain;
}

/// Induction of the base case: peel one vertex at a time into T (or S)
/// until the middle equals both N+(S) and N-(T).
SeparationChain grow_base_chain(const Digraph& g, const VertexSet& s, const VertexSet& t) {
  const VertexSet out_s = g.out_closed(s);
  const VertexSet in_t = g.in_closed(t);
  const VertexSet middle = (s | t).complement();
  if (middle == out_s - s && middle == in_t - t) {
    SeparationChain c;
    c.seps.push_back({out_s, in_t});
    return c;
  }
  const VertexSet grow_t = middle - out_s;
  if (!grow_t.empty()) {
    SeparationChain c = grow_base_chain(g, s, t.with(grow_t.first()));
    c.push_back(right_trivial(g, t));
    return c;
  }
  const VertexSet grow_s = middle - in_t;
  SeparationChain tail = grow_base_chain(g, s.with(grow_s.first()), t);
  SeparationChain c;
  c.push_back(left_trivial(g, s));
  c.append(tail);
  return c;
}

class Recursion {
 public:
  Recursion(const Digraph& g, std::size_t k, const SolveOptions& options, SolveStats& stats)
      : g_(g), k_(k), options_(options), stats_(stats) {}

  /// `parent_gamma` and `strict` describe the lower bound on gamma this
  /// instance must satisfy; it is checked, not assumed.
  std::optional<SeparationChain> run(const VertexSet& s, const VertexSet& t, std::size_t depth,
                                     std::size_t parent_gamma, bool strict) {
    stats_.max_depth = std::max(stats_.max_depth, depth);
    const VertexSet middle = (s | t).complement();
    if (middle.count() <= k_ + 1) {
      ++stats_.base_count;
      emit(depth, s, t, 0, 0, TraceAction::kBase);
      return make_tight(g_, s, t, grow_base_chain(g_, s, t));
    }

    ++stats_.instance_count;
    if (options_.memoize_refusals && refused_.contains({s, t})) {
      ++stats_.memo_hits;
      return std::nullopt;
    }

    const std::size_t mu_here = mu(g_, s, t);
    const auto leftmost = min_st_separation(g_, s, t);
    if (!leftmost) throw std::logic_error("solver: admissible instance without a separation");
    const std::size_t gamma_here = leftmost->order();
    if (gamma_here > k_ || gamma_here < parent_gamma || (strict && gamma_here == parent_gamma)) {
      ++stats_.gamma_violations;
    }

    std::optional<SeparationChain> result;
    if (auto split = find_nontrivial_min_separation(g_, s, t)) {
      result = divide(s, t, *split, depth, mu_here, gamma_here);
    } else {
      result = branch(s, t, middle, depth, mu_here, gamma_here);
    }
    if (!result) {
      emit(depth, s, t, gamma_here, mu_here, TraceAction::kRefuse);
      if (options_.memoize_refusals) refused_.insert({s, t});
    }
    return result;
  }

 private:
  std::optional<SeparationChain> divide(const VertexSet& s, const VertexSet& t, const Separation& split,
                                        std::size_t depth, std::size_t mu_here,
                                        std::size_t gamma_here) {
    ++stats_.divide_count;
    const VertexSet left_t = split.b - split.a;
    const VertexSet right_s = split.a - split.b;
    const std::size_t mu_left = mu(g_, s, left_t);
    const std::size_t mu_right = mu(g_, right_s, t);
    if (mu_left + mu_right != mu_here || mu_left == 0 || mu_right == 0) {
      ++stats_.divide_mu_violations;
    }
    emit(depth, s, t, gamma_here, mu_here, TraceAction::kDivide, &split);

    auto first = run(s, left_t, depth + 1, gamma_here, false);
    if (!first) return std::nullopt;
    auto second = run(right_s, t, depth + 1, gamma_here, false);
    if (!second) return std::nullopt;
    // Tight halves end and start exactly at the split separation.
    SeparationChain chain = std::move(*first);
    chain.push_back(split);
    chain.append(*second);
    return chain;
  }

  std::optional<SeparationChain> branch(const VertexSet& s, const VertexSet& t, const VertexSet& middle,
                                        std::size_t depth, std::size_t mu_here,
                                        std::size_t gamma_here) {
    ++stats_.branch_count;
    const bool left_min = g_.d_plus(s) == gamma_here;
    const bool right_min = g_.d_minus(t) == gamma_here;
    if (!left_min && !right_min) {
      throw std::logic_error("solver: no non-trivial minimum separation, yet neither trivial one is minimum");
    }

    const auto left = candidates(middle, [&](Vertex u) {
      if (g_.out_neighbors(u).intersects(t)) return kReject;
      return g_.d_plus(s.with(u));
    });
    const auto right = candidates(middle, [&](Vertex v) {
      if (g_.in_neighbors(v).intersects(s)) return kReject;
      return g_.d_minus(t.with(v));
    });
    stats_.max_fanout_left = std::max(stats_.max_fanout_left, left.size());
    stats_.max_fanout_right = std::max(stats_.max_fanout_right, right.size());

    auto child = [&](const VertexSet& cs, const VertexSet& ct) {
      if (mu(g_, cs, ct) >= mu_here) ++stats_.mu_increase_violations;
      return run(cs, ct, depth + 1, gamma_here, true);
    };

    if (left_min && right_min) {
      emit(depth, s, t, gamma_here, mu_here, TraceAction::kBranchBoth, nullptr,
           left.size() * right.size());
      for (Vertex u : left) {
        for (Vertex v : right) {
          if (u == v || g_.has_edge(u, v)) continue;
          if (auto sub = child(s.with(u), t.with(v))) {
            SeparationChain chain;
            chain.push_back(left_trivial(g_, s));
            chain.append(*sub);
            chain.push_back(right_trivial(g_, t));
            return chain;
          }
        }
      }
      return std::nullopt;
    }
    if (left_min) {
      emit(depth, s, t, gamma_here, mu_here, TraceAction::kBranchLeft, nullptr, left.size());
      for (Vertex u : left) {
        if (auto sub = child(s.with(u), t)) {
          SeparationChain chain;
          chain.push_back(left_trivial(g_, s));
          chain.append(*sub);
          return chain;
        }
      }
      return std::nullopt;
    }
    emit(depth, s, t, gamma_here, mu_here, TraceAction::kBranchRight, nullptr, right.size());
    for (Vertex v : right) {
      if (auto sub = child(s, t.with(v))) {
        sub->push_back(right_trivial(g_, t));
        return sub;
      }
    }
    return std::nullopt;
  }

  static constexpr std::size_t kReject = static_cast<std::size_t>(-1);

  /// Middle vertices whose cost is <= k, ordered by (cost, index).
  template <typename Cost>
  std::vector<Vertex> candidates(const VertexSet& middle, Cost cost) const {
    std::vector<std::pair<std::size_t, Vertex>> scored;
    middle.for_each([&](Vertex v) {
      const std::size_t c = cost(v);
      if (c != kReject && c <= k_) scored.emplace_back(c, v);
    });
    std::sort(scored.begin(), scored.end());
    std::vector<Vertex> out;
    out.reserve(scored.size());
    for (const auto& [c, v] : scored) out.push_back(v);
    return out;
  }

  void emit(std::size_t depth, const VertexSet& s, const VertexSet& t, std::size_t gamma_value,
            std::size_t mu_value, TraceAction action, const Separation* split = nullptr,
            std::size_t fanout = 0) const {
    if (!options_.trace) return;
    TraceEvent ev;
    ev.depth = depth;
    ev.s = &s;
    ev.t = &t;
    ev.gamma = gamma_value;
    ev.mu = mu_value;
    ev.action = action;
    ev.split = split;
    ev.fanout = fanout;
    options_.trace(ev);
  }

  const Digraph& g_;
  std::size_t k_;
  const SolveOptions& options_;
  SolveStats& stats_;
  std::set<std::pair<VertexSet, VertexSet>> refused_;
};

}  // namespace

SeparationChain base_case_chain(const Digraph& g, const Instance& inst) {
  check_instance(g, inst, "base_case_chain");
  const std::size_t middle = (inst.s | inst.t).complement().count();
  if (middle > inst.k + 1) {
    throw InputError("base_case_chain: |V \\ (S u T)| = " + std::to_string(middle) + " exceeds k + 1 = " +
                     std::to_string(inst.k + 1));
  }
  return make_tight(g, inst.s, inst.t, grow_base_chain(g, inst.s, inst.t));
}

std::optional<SeparationChain> solve_instance(const Digraph& g, const Instance& inst,
                                              SolveStats* stats, const SolveOptions& options) {
  check_instance(g, inst, "solve_instance");
  SolveStats local;
  Recursion rec(g, inst.k, options, stats ? *stats : local);
  return rec.run(inst.s, inst.t, 0, 0, false);
}

SolveResult solve(const Digraph& g, std::size_t k, const SolveOptions& options) {
  SolveResult result;
  if (g.order() == 0) {
    result.decomposition = PathDecomposition{};
    return result;
  }
  const Instance root{g.empty_set(), g.empty_set(), k};
  result.chain = solve_instance(g, root, &result.stats, options);
  if (!result.chain) return result;
  result.decomposition = chain_to_decomposition(g, *result.chain);
  const auto report = validate_decomposition(g, *result.decomposition);
  if (!report.valid || report.width > k) {
    throw std::logic_error("solve: produced an invalid decomposition: " + report.violation);
  }
  return result;
}

PathwidthResult compute_pathwidth(const Digraph& g, const SolveOptions& options) {
  PathwidthResult out;
  for (std::size_t k = 0;; ++k) {
    auto r = solve(g, k, options);
    out.stats.merge(r.stats);
    if (r.found()) {
      out.width = k;
      out.decomposition = std::move(*r.decomposition);
      return out;
    }
  }
}

}  // namespace dipw

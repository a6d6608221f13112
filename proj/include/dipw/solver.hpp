#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>

#include "dipw/separations.hpp"

namespace dipw {

/// A subproblem (S, T) with width bound k.
struct Instance {
  VertexSet s;
  VertexSet t;
  std::size_t k = 0;
};

/// N+[S] n T = {}, d+(S) <= k and d-(T) <= k.
bool is_admissible(const Digraph& g, const Instance& inst);

/// Counters gathered during one solve. `instance_count` excludes base-case
/// instances, matching the recursion count the running-time analysis bounds.
struct SolveStats {
  std::size_t instance_count = 0;
  std::size_t base_count = 0;
  std::size_t max_depth = 0;
  std::size_t divide_count = 0;
  std::size_t branch_count = 0;
  std::size_t memo_hits = 0;

  /// Largest number of admissible single-vertex extensions seen on each side.
  std::size_t max_fanout_left = 0;
  std::size_t max_fanout_right = 0;

  /// Runtime checks of the potential argument. Both stay zero on a correct run.
  std::size_t divide_mu_violations = 0;
  std::size_t mu_increase_violations = 0;
  std::size_t gamma_violations = 0;

  void merge(const SolveStats& other);
};

enum class TraceAction { kBase, kDivide, kBranchBoth, kBranchLeft, kBranchRight, kRefuse };

const char* to_string(TraceAction action);

struct TraceEvent {
  std::size_t depth = 0;
  const VertexSet* s = nullptr;
  const VertexSet* t = nullptr;
  std::size_t gamma = 0;
  std::size_t mu = 0;
  TraceAction action = TraceAction::kBase;
  /// Divide: the split separation. Branch: number of children tried.
  const Separation* split = nullptr;
  std::size_t fanout = 0;
};

struct SolveOptions {
  /// Cache refused (S, T) pairs. Off by default so that instance counts are
  /// those of the plain recursion.
  bool memoize_refusals = false;
  std::function<void(const TraceEvent&)> trace;
};

struct SolveResult {
  std::optional<SeparationChain> chain;
  std::optional<PathDecomposition> decomposition;
  SolveStats stats;

  bool found() const { return decomposition.has_value(); }
};

/// Path-decomposition of width <= k, or nullopt when pathwidth > k.
SolveResult solve(const Digraph& g, std::size_t k, const SolveOptions& options = {});

/// Gapless, tight S-T chain of order <= k, or nullopt if none exists.
/// Throws InputError when `inst` is not k-admissible.
std::optional<SeparationChain> solve_instance(const Digraph& g, const Instance& inst,
                                              SolveStats* stats = nullptr,
                                              const SolveOptions& options = {});

/// Constructive chain for admissible instances with |V \ (S u T)| <= k + 1.
/// Throws InputError if the precondition fails.
SeparationChain base_case_chain(const Digraph& g, const Instance& inst);

struct PathwidthResult {
  std::size_t width = 0;
  PathDecomposition decomposition;
  SolveStats stats;
};

/// Runs solve for k = 0, 1, ... until it succeeds.
PathwidthResult compute_pathwidth(const Digraph& g, const SolveOptions& options = {});

}  // namespace dipw

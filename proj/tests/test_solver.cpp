#include <doctest.h>

#include "dipw/error.hpp"
#include "dipw/oracle.hpp"
#include "dipw/rng.hpp"
#include "dipw/solver.hpp"
#include "support.hpp"

using namespace dipw;

namespace {

Digraph three_cycle() { return Digraph(3, {{0, 1}, {1, 2}, {2, 0}}); }

void check_sound(const Digraph& g, std::size_t k, const SolveResult& r) {
  REQUIRE(r.found());
  const auto rep = chain_predicates(g, *r.chain, g.empty_set(), g.empty_set());
  CHECK(rep.is_st_chain);
  CHECK(rep.is_gapless);
  CHECK(rep.order <= k);
  const auto v = validate_decomposition(g, *r.decomposition);
  CHECK(v.valid);
  CHECK(v.width <= k);
}

}  // namespace

TEST_CASE("solve on small named graphs") {
  const Digraph cyc = three_cycle();
  check_sound(cyc, 1, solve(cyc, 1));
  CHECK_FALSE(solve(cyc, 0).found());
  for (std::size_t n = 1; n <= 7; ++n) check_sound(transitive_tournament(n), 0, solve(transitive_tournament(n), 0));
  CHECK_FALSE(solve(complete_biorientation(4), 2).found());
  CHECK(solve(Digraph(0, {}), 0).found());
}

TEST_CASE("compute_pathwidth") {
  CHECK(compute_pathwidth(Digraph(1, {})).width == 0);
  for (std::size_t n = 1; n <= 6; ++n) CHECK(compute_pathwidth(complete_biorientation(n)).width == n - 1);
  for (std::size_t n = 3; n <= 9; ++n) CHECK(compute_pathwidth(directed_cycle(n)).width == 1);
}

TEST_CASE("solve_instance divides the path at its middle separation") {
  const Digraph path = directed_path(5);
  const VertexSet s(5, {0});
  const VertexSet t(5, {4});
  std::vector<TraceAction> actions;
  SolveOptions opts;
  opts.trace = [&](const TraceEvent& ev) { actions.push_back(ev.action); };
  SolveStats stats;
  const auto chain = solve_instance(path, Instance{s, t, 1}, &stats, opts);
  REQUIRE(chain);
  const auto rep = chain_predicates(path, *chain, s, t);
  CHECK(rep.is_st_chain);
  CHECK(rep.is_gapless);
  CHECK(rep.is_tight);
  CHECK(rep.order <= 1);
  CHECK(stats.divide_count >= 1);
  CHECK(std::find(actions.begin(), actions.end(), TraceAction::kDivide) != actions.end());
  CHECK(stats.divide_mu_violations == 0);
}

TEST_CASE("solve_instance rejects inadmissible pairs") {
  const Digraph path = directed_path(3);
  CHECK_THROWS_AS(solve_instance(path, Instance{VertexSet(3, {0}), VertexSet(3, {1}), 2}), InputError);
  CHECK_THROWS_AS(solve_instance(complete_biorientation(5), Instance{VertexSet(5, {0}), VertexSet(5), 2}),
                  InputError);
}

TEST_CASE("base case chains") {
  const Digraph one(1, {});
  const auto c1 = base_case_chain(one, Instance{one.empty_set(), one.empty_set(), 0});
  CHECK(chain_predicates(one, c1, one.empty_set(), one.empty_set()).is_gapless);
  CHECK(chain_to_decomposition(one, c1).width() == 0);

  const Digraph cyc = three_cycle();
  const auto c3 = base_case_chain(cyc, Instance{cyc.empty_set(), cyc.empty_set(), 2});
  const auto rep = chain_predicates(cyc, c3, cyc.empty_set(), cyc.empty_set());
  CHECK(rep.is_st_chain);
  CHECK(rep.is_gapless);
  CHECK(rep.is_tight);
  CHECK(rep.order <= 2);

  // V \ (S u T) = N+(S) = N-(T): the single separation (N+[S], N-[T]).
  const Digraph path = directed_path(3);
  const VertexSet s(3, {0});
  const VertexSet t(3, {2});
  const auto single = base_case_chain(path, Instance{s, t, 1});
  CHECK(single.size() == 1);
  CHECK(single.front() == Separation{VertexSet(3, {0, 1}), VertexSet(3, {1, 2})});

  CHECK_THROWS_AS(base_case_chain(directed_path(6), Instance{VertexSet(6), VertexSet(6), 1}), InputError);
}

TEST_CASE("base case always succeeds on admissible instances") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const std::size_t n = 2 + seed % 6;
    const Digraph g = random_digraph(n, 0.4, seed);
    SplitMix64 rng(seed);
    VertexSet s(n);
    VertexSet t(n);
    for (Vertex v = 0; v < n; ++v) {
      const auto r = rng.below(3);
      if (r == 0) s.insert(v);
      if (r == 1) t.insert(v);
    }
    t -= g.out_closed(s);
    const std::size_t middle = (s | t).complement().count();
    const std::size_t k = std::max({g.d_plus(s), g.d_minus(t), middle == 0 ? 0 : middle - 1});
    const Instance inst{s, t, k};
    REQUIRE(is_admissible(g, inst));
    const auto c = base_case_chain(g, inst);
    const auto rep = chain_predicates(g, c, s, t);
    CHECK(rep.is_st_chain);
    CHECK(rep.is_gapless);
    CHECK(rep.is_tight);
    CHECK(rep.order <= k);
  }
}

TEST_CASE("solver agrees with the oracle and stays sound") {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const std::size_t n = 2 + seed % 7;
    const Digraph g = random_digraph(n, 0.15 + 0.1 * static_cast<double>(seed % 5), seed);
    const std::size_t pw = oracle_pathwidth(g);
    for (std::size_t k = 0; k < n; ++k) {
      const auto r = solve(g, k);
      CHECK(r.found() == (pw <= k));
      if (r.found()) check_sound(g, k, r);
      CHECK(r.stats.divide_mu_violations == 0);
      CHECK(r.stats.mu_increase_violations == 0);
      CHECK(r.stats.gamma_violations == 0);
    }
  }
}

TEST_CASE("memoized refusals give the same answers") {
  SolveOptions memo;
  memo.memoize_refusals = true;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Digraph g = random_h_semicomplete(12, 1, seed);
    for (std::size_t k = 1; k <= 4; ++k) CHECK(solve(g, k).found() == solve(g, k, memo).found());
  }
}

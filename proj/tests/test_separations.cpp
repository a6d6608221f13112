#include <doctest.h>

#include "dipw/error.hpp"
#include "dipw/oracle.hpp"
#include "dipw/rng.hpp"
#include "dipw/separations.hpp"
#include "support.hpp"

using namespace dipw;
using dipw::testing::brute_has_nontrivial_min;
using dipw::testing::brute_min_order;
using dipw::testing::for_each_cover;

namespace {

Digraph three_cycle() { return Digraph(3, {{0, 1}, {1, 2}, {2, 0}}); }

VertexSet set(std::size_t n, std::initializer_list<Vertex> vs) { return VertexSet(n, vs); }

/// Random disjoint (S, T) with no edge from S to T.
std::pair<VertexSet, VertexSet> random_pair(const Digraph& g, SplitMix64& rng) {
  const std::size_t n = g.order();
  VertexSet s(n);
  VertexSet t(n);
  for (Vertex v = 0; v < n; ++v) {
    const auto r = rng.below(5);
    if (r == 0) s.insert(v);
    if (r == 1) t.insert(v);
  }
  t -= g.out_closed(s);
  return {s, t};
}

}  // namespace

TEST_CASE("is_separation basics") {
  const Digraph g = three_cycle();
  CHECK(is_separation(g, set(3, {0, 1}), set(3, {1, 2})));
  CHECK(sep_order(Separation{set(3, {0, 1}), set(3, {1, 2})}) == 1);
  CHECK_FALSE(is_separation(g, set(3, {0}), set(3, {1, 2})));
  CHECK(is_separation(g, g.all(), g.all()));
}

TEST_CASE("minimum separations on small examples") {
  const Digraph cyc = three_cycle();
  const auto m = min_st_separation(cyc, set(3, {0}), set(3, {2}));
  REQUIRE(m);
  CHECK(m->a == set(3, {0, 1}));
  CHECK(m->b == set(3, {1, 2}));

  const Digraph tt(3, {{0, 1}, {0, 2}, {1, 2}});
  const auto z = min_st_separation(tt, set(3, {2}), set(3, {0}));
  REQUIRE(z);
  CHECK(z->order() == 0);
  CHECK(z->a == set(3, {2}));

  CHECK_FALSE(min_st_separation(complete_biorientation(3), set(3, {0}), set(3, {1})));
  CHECK(gamma(complete_biorientation(3), set(3, {0}), set(3, {1})) == kInfiniteOrder);
  CHECK_THROWS_AS(min_st_separation(cyc, set(3, {0}), set(3, {0})), InputError);
}

TEST_CASE("minimum separation order matches exhaustive search") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const std::size_t n = 2 + seed % 4;
    const Digraph g = random_digraph(n, 0.35, seed);
    SplitMix64 rng(seed);
    for (int trial = 0; trial < 6; ++trial) {
      const auto [s, t] = random_pair(g, rng);
      const auto m = min_st_separation(g, s, t);
      const auto brute = brute_min_order(g, s, t);
      REQUIRE(m.has_value() == brute.has_value());
      if (!m) continue;
      CHECK(is_st_separation(g, *m, s, t));
      CHECK(m->order() == *brute);
      CHECK(g.out_closed(s).is_subset_of(m->a));
    }
  }
}

TEST_CASE("non-trivial minimum separation detection matches the pair test") {
  const Digraph path = directed_path(5);
  const auto split = find_nontrivial_min_separation(path, set(5, {0}), set(5, {4}));
  REQUIRE(split);
  CHECK(split->order() == 1);
  CHECK(is_st_separation(path, *split, set(5, {0}), set(5, {4})));
  CHECK_FALSE(find_nontrivial_min_separation(three_cycle(), set(3, {0}), set(3, {2})));

  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const std::size_t n = 2 + seed % 4;
    const Digraph g = random_digraph(n, 0.3, seed + 1000);
    SplitMix64 rng(seed);
    for (int trial = 0; trial < 5; ++trial) {
      const auto [s, t] = random_pair(g, rng);
      if (!min_st_separation(g, s, t)) continue;
      const auto found = find_nontrivial_min_separation(g, s, t);
      CHECK(found.has_value() == brute_has_nontrivial_min(g, s, t));
      if (found) {
        CHECK(is_st_separation(g, *found, s, t));
        CHECK(found->order() == gamma(g, s, t));
        CHECK_FALSE(dipw::testing::is_trivial(*found, s, t));
      }
    }
  }
}

TEST_CASE("measures") {
  for (std::size_t n = 0; n < 6; ++n) {
    const Digraph g = random_digraph(n, 0.5, n);
    CHECK(mu(g, g.empty_set(), g.empty_set()) == 2 * n);
  }
  const Digraph path = directed_path(5);
  const VertexSet s = set(5, {0});
  const VertexSet t = set(5, {4});
  const auto split = find_nontrivial_min_separation(path, s, t);
  REQUIRE(split);
  CHECK(mu(path, s, split->b - split->a) + mu(path, split->a - split->b, t) == mu(path, s, t));
  CHECK(mu_prime(path, path.empty_set(), path.empty_set()) == 19);
  const Digraph edge(2, {{0, 1}});
  CHECK(mu(edge, set(2, {0}), set(2, {1})) == 2);
  CHECK(mu(Digraph(2, {{0, 1}, {1, 0}}), set(2, {}), set(2, {})) == 4);
}

TEST_CASE("uncrossing of separations") {
  // For any S-T separation (A, B) and the computed minimum (X, Y), both
  // (A n X, B u Y) and (A u X, B n Y) are S-T separations of order at most
  // |A n B|, and the orders add up exactly.
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 4 + seed % 2;
    const Digraph g = random_digraph(n, 0.35, seed + 77);
    SplitMix64 rng(seed);
    const auto [s, t] = random_pair(g, rng);
    const auto xy = min_st_separation(g, s, t);
    if (!xy) continue;
    for_each_cover(n, [&](const Separation& ab) {
      if (!is_st_separation(g, ab, s, t)) return;
      const Separation meet{ab.a & xy->a, ab.b | xy->b};
      const Separation join{ab.a | xy->a, ab.b & xy->b};
      CHECK(is_st_separation(g, meet, s, t));
      CHECK(is_st_separation(g, join, s, t));
      CHECK(meet.order() <= ab.order());
      CHECK(join.order() <= ab.order());
      CHECK(ab.order() + xy->order() == meet.order() + join.order());
      CHECK(g.out_closed(s).is_subset_of(ab.a));
    });
  }
}

TEST_CASE("chain predicates") {
  const Digraph g = three_cycle();
  const VertexSet none = g.empty_set();
  SeparationChain jump;
  jump.seps = {{none, g.all()}, {g.all(), none}};
  const auto r = chain_predicates(g, jump, none, none);
  CHECK(r.is_chain);
  CHECK(r.is_st_chain);
  CHECK_FALSE(r.is_gapless);

  SeparationChain rep;
  rep.seps = {{set(3, {0, 1}), set(3, {1, 2})}, {set(3, {0, 1}), set(3, {1, 2})}};
  const auto rr = chain_predicates(g, rep, none, none);
  CHECK(rr.is_chain);
  CHECK(rr.is_gapless);
  CHECK(rr.is_nice);
  CHECK(rr.order == 1);

  const Digraph one(1, {});
  SeparationChain tiny;
  tiny.seps = {{one.empty_set(), one.all()}, {one.all(), one.empty_set()}};
  CHECK(chain_predicates(one, tiny, one.empty_set(), one.empty_set()).is_gapless);
}

TEST_CASE("decomposition validation") {
  const Digraph g = three_cycle();
  PathDecomposition good{{set(3, {0, 1}), set(3, {1, 2})}};
  const auto ok = validate_decomposition(g, good);
  CHECK(ok.valid);
  CHECK(ok.width == 1);
  PathDecomposition bad{{set(3, {1, 2}), set(3, {0, 1})}};
  CHECK_FALSE(validate_decomposition(g, bad).valid);
  PathDecomposition missing{{set(3, {0, 1})}};
  const auto miss = validate_decomposition(g, missing);
  CHECK_FALSE(miss.valid);
  CHECK(miss.violation.find("cover") != std::string::npos);
  PathDecomposition gap{{set(3, {0, 1, 2}), set(3, {1}), set(3, {0, 2})}};
  CHECK_FALSE(validate_decomposition(g, gap).valid);
}

TEST_CASE("chain to decomposition") {
  const Digraph one(1, {});
  SeparationChain tiny;
  tiny.seps = {{one.empty_set(), one.all()}, {one.all(), one.empty_set()}};
  const auto pd = chain_to_decomposition(one, tiny);
  CHECK(pd.width() == 0);
  CHECK(validate_decomposition(one, pd).valid);

  const Digraph g = three_cycle();
  const SeparationChain c = ordering_to_chain(g, {0, 1, 2});
  CHECK(c.order() == 1);
  const auto dec = chain_to_decomposition(g, c);
  CHECK(validate_decomposition(g, dec).valid);
  CHECK(dec.width() == 1);

  SeparationChain jump;
  jump.seps = {{g.empty_set(), g.all()}, {g.all(), g.empty_set()}};
  CHECK_THROWS_AS(chain_to_decomposition(g, jump), InputError);
}

TEST_CASE("orderings give gapless chains of matching order") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 1 + seed % 8;
    const Digraph g = random_digraph(n, 0.3, seed + 5);
    const auto ordering = oracle_ordering(g);
    const auto c = ordering_to_chain(g, ordering);
    const auto rep = chain_predicates(g, c, g.empty_set(), g.empty_set());
    CHECK(rep.is_st_chain);
    CHECK(rep.is_gapless);
    CHECK(rep.order == ordering_width(g, ordering));
    const auto pd = chain_to_decomposition(g, c);
    const auto v = validate_decomposition(g, pd);
    CHECK(v.valid);
    CHECK(v.width <= rep.order);
  }
}

TEST_CASE("text formats round-trip") {
  const Digraph g = random_digraph(6, 0.4, 3);
  const auto c = ordering_to_chain(g, oracle_ordering(g));
  CHECK(read_chain(write_chain(c), 6) == c);
  const auto pd = chain_to_decomposition(g, c);
  const auto back = read_decomposition(write_decomposition(pd), 6);
  CHECK(back.bags == pd.bags);
  CHECK_THROWS(read_decomposition("width 5\nbags 1\n0 1\n", 6));
}

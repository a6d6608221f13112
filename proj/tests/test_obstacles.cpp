#include <doctest.h>

#include <cmath>

#include "dipw/error.hpp"
#include "dipw/obstacles.hpp"
#include "dipw/oracle.hpp"
#include "support.hpp"

using namespace dipw;

namespace {

/// Transitive tournament on 0..7 plus vertex 8 with 8 -> {2, 5, 6, 7} and
/// 8 <-> {0, 1, 3, 4}. Pathwidth 1, yet it carries a valid (4, 1, 1)-spider.
Digraph spider_graph() {
  std::vector<Edge> es;
  for (Vertex i = 0; i < 8; ++i) {
    for (Vertex j = 0; j < i; ++j) es.emplace_back(i, j);
  }
  for (Vertex v : {0U, 1U, 3U, 4U}) es.emplace_back(v, 8);
  for (Vertex v = 0; v < 8; ++v) es.emplace_back(8, v);
  return Digraph(9, es);
}

Spider small_spider() { return Spider{{{8, {0, 1, 3}, {4, 5, 6, 7}}}, 4, 1, 1}; }

}  // namespace

TEST_CASE("degree tangle verification") {
  for (std::size_t n = 2; n <= 7; ++n) {
    const Digraph k = complete_biorientation(n);
    const auto v = verify_degree_tangle(k, DegreeTangle{k.all(), n - 1, n, 0});
    REQUIRE(v);
    CHECK(*v.lower_bound == (n - 1 + 1) / 2);
    CHECK(*v.lower_bound <= oracle_pathwidth(k));
  }
  const Digraph tt = transitive_tournament(5);
  CHECK_FALSE(verify_degree_tangle(tt, DegreeTangle{VertexSet(5, {1, 4}), 1, 2, 1}));
  CHECK_THROWS_AS(verify_degree_tangle(directed_cycle(4), DegreeTangle{VertexSet(4, {0}), 1, 1, 0}), InputError);
}

TEST_CASE("a (3k+2, k) degree tangle forces pathwidth above k") {
  for (std::size_t k = 0; k <= 3; ++k) {
    const std::size_t n = 3 * k + 2;
    const Digraph g = complete_biorientation(n);
    const auto v = verify_degree_tangle(g, DegreeTangle{g.all(), n - 1, n, k});
    REQUIRE(v);
    CHECK(*v.lower_bound >= k + 1);
    CHECK(oracle_pathwidth(g) > k);
  }
}

TEST_CASE("matching tangle verification") {
  // 0 has out-degree 1, 2 has out-degree 2: a (1, 1, 0) matching tangle 0 -> 2.
  const Digraph g(3, {{0, 2}, {1, 0}, {2, 1}, {2, 0}});
  const auto v = verify_matching_tangle(g, MatchingTangle{{{0, 2}}, 1, 1, 0});
  REQUIRE(v);
  CHECK(*v.lower_bound == 1);
  CHECK_FALSE(verify_matching_tangle(g, MatchingTangle{{{1, 2}}, 1, 1, 0}));
  CHECK_FALSE(verify_matching_tangle(g, MatchingTangle{{{0, 2}}, 1, 2, 0}));
}

TEST_CASE("matching tangle with l = 2 and k = 1 found by search") {
  bool seen = false;
  for (std::uint64_t seed = 0; seed < 500 && !seen; ++seed) {
    const Digraph g = random_h_semicomplete(8, 0, seed);
    for (std::size_t d = 0; d < 8; ++d) {
      const auto m = find_matching_tangle(g, d, 1);
      if (!m || m->l < 2) continue;
      MatchingTangle two{{m->phi[0], m->phi[1]}, d, 2, 1};
      const auto v = verify_matching_tangle(g, two);
      REQUIRE(v);
      CHECK(*v.lower_bound == 2);
      CHECK(oracle_pathwidth(g) >= 2);
      seen = true;
      break;
    }
  }
  CHECK(seen);
}

TEST_CASE("spider verification") {
  const Digraph g = spider_graph();
  REQUIRE(h_index(g) == 0);
  const auto v = verify_spider(g, small_spider());
  REQUIRE(v);
  CHECK(*v.lower_bound == 1);
  CHECK(oracle_pathwidth(g) == 1);

  Spider short_leg = small_spider();
  short_leg.legs[0].left.pop_back();
  CHECK_FALSE(verify_spider(g, short_leg));
  Spider wrong_side = small_spider();
  wrong_side.legs[0].right[0] = 2;
  CHECK_FALSE(verify_spider(g, wrong_side));
  Spider no_width = small_spider();
  no_width.w = 0;
  CHECK_FALSE(verify_spider(g, no_width));
}

TEST_CASE("wildness") {
  const Digraph tt = transitive_tournament(6);
  CHECK(wildness(tt, 5) == 1);
  CHECK(wildness(tt, 0) == 1);
  const Digraph k = complete_biorientation(5);
  for (Vertex v = 0; v < 5; ++v) CHECK(wildness(k, v) == 1);
}

TEST_CASE("tameness") {
  const Digraph k = complete_biorientation(6);
  CHECK(verify_tameness(k, DegreeTangle{k.all(), 5, 6, 0}, 5));

  bool rejected = false;
  for (std::uint64_t seed = 0; seed < 200 && !rejected; ++seed) {
    const Digraph g = random_h_semicomplete(10, 0, seed);
    for (Vertex v = 0; v < 10; ++v) {
      if (wildness(g, v) > 3) {
        const DegreeTangle t{VertexSet(10, {v}), g.out_degree(v), 1, 0};
        CHECK_FALSE(verify_tameness(g, t, 0));
        CHECK(verify_tameness(g, t, wildness(g, v)));
        rejected = true;
        break;
      }
    }
  }
  CHECK(rejected);

  // Spider tameness counts tame legs against 2l.
  const Digraph g = spider_graph();
  CHECK(verify_tameness(g, small_spider(), 9));
  Spider tight = small_spider();
  tight.legs[0].left = {0, 1, 3};
  tight.legs[0].right = {4, 5, 6, 7};
  CHECK(verify_tameness(g, Obstacle{tight}, 9) == verify_tameness(g, tight, 9));
}

TEST_CASE("degree interval bound") {
  for (std::size_t n = 1; n <= 7; ++n) {
    const Digraph k = complete_biorientation(n);
    CHECK(degree_interval_count(k, n - 1, 0) == n);
    CHECK(degree_interval_lower_bound(k) == (n - 1 + 1) / 2);
  }
  CHECK(degree_interval_lower_bound(transitive_tournament(7)) == 0);
  CHECK(degree_interval_lower_bound(Digraph(1, {})) == 0);
}

TEST_CASE("degree-interval inequality and degree containment") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const std::size_t n = 3 + seed % 8;
    const Digraph g = random_h_semicomplete(n, 0, seed + 11);
    const std::size_t pw = oracle_pathwidth(g);
    for (std::size_t d1 = 0; d1 < n; ++d1) {
      for (std::size_t d2 = 0; d1 + d2 < n; ++d2) CHECK(degree_interval_count(g, d1, d2) + d1 + d2 <= n + 2 * pw);
    }
    for (std::size_t d = 0; d < n; ++d) {
      for (Vertex v = 0; v < n; ++v) {
        if (g.out_degree(v) <= d) CHECK(g.in_degree(v) + d + 1 >= n);
      }
    }
    CHECK(degree_interval_lower_bound(g) <= pw);
  }
}

TEST_CASE("finders") {
  const Digraph k = complete_biorientation(6);
  const auto t = find_degree_tangle(k, 0);
  REQUIRE(t);
  CHECK(t->l == 6);
  const Digraph tt = transitive_tournament(6);
  const auto t1 = find_degree_tangle(tt, 0);
  REQUIRE(t1);
  CHECK(t1->l == 1);
  for (std::size_t d = 0; d < 6; ++d) CHECK_FALSE(find_matching_tangle(tt, d, 0));
  CHECK_FALSE(find_spider(tt));
  CHECK(find_spider(spider_graph()).has_value());
}

TEST_CASE("found certificates verify and are sound") {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const std::size_t n = 4 + seed % 9;
    const Digraph g = random_h_semicomplete(n, 0, seed + 500);
    const std::size_t pw = oracle_pathwidth(g);
    for (std::size_t k = 0; k < n; ++k) {
      if (auto c = find_degree_tangle(g, k)) {
        const auto v = verify_degree_tangle(g, *c);
        REQUIRE(v);
        CHECK(*v.lower_bound <= pw);
      }
      if (auto c = find_best_matching_tangle(g, k)) {
        const auto v = verify_matching_tangle(g, *c);
        REQUIRE(v);
        CHECK(*v.lower_bound <= pw);
      }
    }
    if (auto c = find_spider(g)) {
      const auto v = verify_spider(g, *c);
      REQUIRE(v);
      CHECK(*v.lower_bound <= pw);
    }
  }
}

TEST_CASE("certificate json round-trip") {
  const Digraph g = spider_graph();
  const std::vector<Obstacle> certs{DegreeTangle{VertexSet(9, {2, 3}), 2, 2, 1},
                                    MatchingTangle{{{0, 8}}, 1, 1, 0}, small_spider()};
  for (const auto& c : certs) {
    const Obstacle back = read_certificate(write_certificate(c), 9);
    CHECK(write_certificate(back) == write_certificate(c));
    CHECK(verify(g, back).lower_bound == verify(g, c).lower_bound);
  }
  CHECK_THROWS_AS(read_certificate("{\"kind\":\"degree_tangle\",\"d\":0,\"l\":1,\"k\":0,\"t\":[12]}", 9), InputError);
  CHECK_THROWS_AS(read_certificate("{\"kind\":\"nope\"}", 9), InputError);
  CHECK_THROWS_AS(read_certificate("not json", 9), InputError);
}

TEST_CASE("constants") {
  CHECK(obstacle_scale(3, 1) == 6);
  CHECK(pathwidth_threshold(2, 0) == 256);
  CHECK(sampling_k_threshold(1) == 40'000'000ULL);
}

TEST_CASE("survival experiment") {
  const Digraph g = random_h_semicomplete(24, 1, 4);
  const auto first = survival_experiment(g, 1, 2, 99);
  CHECK(first.sample_semicomplete);
  const auto again = survival_experiment(g, 1, 2, 99);
  CHECK(again.survivors == first.survivors);
  CHECK(again.sample_size == first.sample_size);

  const Digraph sc = random_h_semicomplete(16, 0, 8);
  const auto r0 = survival_experiment(sc, 0, 1, 3);
  CHECK(r0.sample_semicomplete);
  CHECK_THROWS_AS(survival_experiment(Digraph(4, {}), 1, 1, 0), InputError);

  // Survivors have mean |T| / (2(h+1)): every vertex is kept with that probability.
  const std::size_t runs = 10000;
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t size = 0;
  for (std::size_t i = 0; i < runs; ++i) {
    const auto r = survival_experiment(g, 1, 2, i);
    CHECK(r.sample_semicomplete);
    size = r.tangle_size;
    sum += static_cast<double>(r.survivors);
    sum_sq += static_cast<double>(r.survivors * r.survivors);
  }
  const double mean = sum / runs;
  const double var = sum_sq / runs - mean * mean;
  const double expected = static_cast<double>(size) / 4.0;
  CHECK(std::abs(mean - expected) <= 3.0 * std::sqrt(var / runs));
}

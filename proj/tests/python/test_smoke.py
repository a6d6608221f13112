import json

import pytest

import dipw


def c3():
    return dipw.Digraph(3, [(0, 1), (1, 2), (2, 0)])


def test_directed_triangle():
    g = c3()
    assert dipw.oracle_pathwidth(g) == 1
    assert dipw.solve(g, 0) is None
    bags = dipw.solve(g, 1)
    valid, width, _ = dipw.validate_decomposition(g, bags)
    assert valid and width == 1


def test_complete_biorientation():
    assert dipw.oracle_pathwidth(dipw.complete_biorientation(4)) == 3


@pytest.mark.parametrize("seed", range(20))
def test_compute_matches_oracle(seed):
    g = dipw.random_digraph(6, 0.4, seed)
    width, bags = dipw.compute_pathwidth(g)
    assert width == dipw.oracle_pathwidth(g)
    assert dipw.validate_decomposition(g, bags)[:2] == (True, width)


def test_text_round_trip():
    g = dipw.random_h_semicomplete(8, 1, 7)
    assert dipw.Digraph.from_text(g.to_text()) == g
    assert dipw.h_index(g) <= 1


def test_bad_input_raises_value_error():
    with pytest.raises(ValueError):
        dipw.Digraph(2, [(0, 0)])
    with pytest.raises(ValueError):
        dipw.Digraph.from_text("3 2\n0 1\n")


def test_certificates_below_pathwidth():
    g = dipw.random_h_semicomplete(10, 0, 3)
    pw = dipw.oracle_pathwidth(g)
    for k in range(3):
        cert = dipw.find_degree_tangle(g, k)
        if cert is not None:
            assert json.loads(cert)["kind"] == "degree_tangle"
            assert dipw.verify_certificate(g, cert) <= pw
    assert dipw.degree_interval_lower_bound(g) <= pw


def test_regular_completion():
    g = dipw.UGraph(4, [(0, 1), (1, 2), (2, 3)])
    h = dipw.regular_completion(g, 2, 7)
    assert h.order == 7
    assert all(h.degree(v) == 2 for v in range(7))
    assert all(h.has_edge(u, v) for u, v in g.edges())


def test_sampler():
    g = dipw.random_bounded_degree_graph(12, 2, 0.5, 1)
    a = dipw.sample_independent_set(g, 2, 5)
    assert a == dipw.sample_independent_set(g, 2, 5)
    assert g.is_independent(a)
    assert dipw.sampler_marginal(2) == pytest.approx(1 / 6)
    report = dipw.marginal_check(g, 2, 5000, [[0, 1, 2, 3, 4]], seed=3)
    assert report["dependent_samples"] == 0
    assert report["csv"].startswith("set_id,t,empirical_upper,bound,empirical_lower")

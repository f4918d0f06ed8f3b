import math
import random

import pytest

import saproute as sr
from saproute.dominance import label_path, simple_cull
from saproute.oracle import enumerate_simple_paths

from conftest import random_network


def two_parallel(c1, c2):
    return sr.Network.build(sr.QUADRATIC, ["s", "t"],
                            [("s", "t", sr.CostFn.quadratic(*c1)),
                             ("s", "t", sr.CostFn.quadratic(*c2))])


def test_build_heuristic_single_edge():
    net = sr.Network.build(sr.QUADRATIC, ["u", "t"],
                           [("u", "t", sr.CostFn.quadratic(2, 3))])
    h = sr.build_heuristic(net, "t")
    assert h["u"] == (2, 3)
    assert h["t"] == (0, 0)


def test_build_heuristic_diamond_takes_componentwise_minima():
    net = sr.Network.build(sr.QUADRATIC, ["u", "a", "b", "t"], [
        ("u", "a", sr.CostFn.quadratic(0.5, 4)),   # path 1: a-sum 1, b-sum 9
        ("a", "t", sr.CostFn.quadratic(0.5, 5)),
        ("u", "b", sr.CostFn.quadratic(2.5, 1)),   # path 2: a-sum 5, b-sum 2
        ("b", "t", sr.CostFn.quadratic(2.5, 1)),
    ])
    h = sr.build_heuristic(net, "t")
    assert h["u"] == (1, 2)


def test_build_heuristic_unreachable_is_infinite():
    net = sr.Network.build(sr.QUADRATIC, ["u", "t"], [])
    h = sr.build_heuristic(net, "t")
    assert h["u"] == (math.inf, math.inf)
    with pytest.raises(sr.NetworkError):
        sr.build_heuristic(net, "zz")


def test_mc_shortest_parallel_edges():
    # incomparable vectors (1,5) and (2,3): both survive
    net = two_parallel((1, 1), (0.25, 2))
    got = sr.mc_shortest(net, "s", "t", 2.0)
    assert sorted(p.vector for p in got) == [(1, 5), (2, 3)]
    # dominated parallel edge disappears
    net = two_parallel((1, 1), (2, 1))  # (1,5) vs (1,9) at d=2
    got = sr.mc_shortest(net, "s", "t", 2.0)
    assert [p.vector for p in got] == [(1, 5)]
    assert got[0].edge_ids == (0,)


def test_mc_shortest_validates_input():
    net = two_parallel((1, 1), (2, 1))
    with pytest.raises(sr.NetworkError):
        sr.mc_shortest(net, "s", "s", 2.0)
    with pytest.raises(sr.NetworkError):
        sr.mc_shortest(net, "s", "zz", 2.0)
    with pytest.raises(sr.NetworkError):
        sr.mc_shortest(net, "s", "t", 2.0, criteria=4)


def brute_frontier(net, s, t, d, criteria, q_edges):
    paths = enumerate_simple_paths(net, s, t)
    labeled = [label_path(net, p.vertices, p.edge_ids, q_edges, d, criteria)
               for p in paths]
    return simple_cull(labeled)


def close_vecs(got, want, rel=1e-9):
    if len(got) != len(want):
        return False
    for g, w in zip(sorted(got), sorted(want)):
        for a, b in zip(g, w):
            if abs(a - b) > rel * max(1.0, abs(b)):
                return False
    return True


def test_mc_shortest_matches_brute_force_frontier():
    # the module's master test: exact frontier agreement on random graphs
    rng = random.Random(20260809)
    checked = 0
    while checked < 200:
        net = random_network(rng, 5, 12, 0.3, 0.0, 5.0)
        s, t = 0, len(net.nodes) - 1
        d = rng.choice([1.0, 2.0, 5.0, 10.0])
        criteria = 2 if checked % 2 == 0 else 3
        q_edges = frozenset()
        if criteria == 3:
            from saproute.solvers import scalar_shortest
            q = scalar_shortest(net, s, t, 1.0)
            if q is None:
                continue
            q_edges = frozenset(q.edge_ids)
        want = brute_frontier(net, s, t, d, criteria, q_edges)
        got = sr.mc_shortest(net, s, t, d, criteria, q_edges)
        assert close_vecs([p.vector for p in got], [p.vector for p in want]), \
            f"frontier mismatch on instance {checked}"
        checked += 1


def test_mc_shortest_output_is_reduced_and_deterministic():
    rng = random.Random(5)
    for _ in range(20):
        net = random_network(rng, 5, 10, 0.35)
        d = 4.0
        got = sr.mc_shortest(net, 0, len(net.nodes) - 1, d, 2)
        assert simple_cull(got) == got  # cull fix-point
        again = sr.mc_shortest(net, 0, len(net.nodes) - 1, d, 2)
        assert again == got


def test_mc_shortest_respects_heuristic_lower_bound():
    rng = random.Random(6)
    for _ in range(30):
        net = random_network(rng, 5, 10, 0.35)
        s, t = 0, len(net.nodes) - 1
        h = sr.build_heuristic(net, t)
        d = 3.0
        for p in sr.mc_shortest(net, s, t, d, 2):
            ha, hb = h[s]
            assert p.vector[0] >= hb - 1e-9
            assert p.vector[1] >= ha * d * d + hb - 1e-9


def test_mc_multi_target_chain():
    net = sr.Network.build(sr.QUADRATIC, ["s", "u", "t"],
                           [("s", "u", sr.CostFn.quadratic(1, 1)),
                            ("u", "t", sr.CostFn.quadratic(1, 2))])
    got = sr.mc_multi_target(net, "s", ("u", "t"), 2.0)
    assert [p.vector for p in got["u"]] == [(1, 5)]
    assert [p.vector for p in got["t"]] == [(3, 11)]


def test_mc_multi_target_source_is_empty_path():
    net = two_parallel((1, 1), (2, 1))
    got = sr.mc_multi_target(net, "s", ("s",), 2.0)
    assert len(got["s"]) == 1
    assert got["s"][0].vector == (0.0, 0.0)
    assert got["s"][0].edge_ids == ()


def test_mc_multi_target_consistent_with_single_target():
    rng = random.Random(21)
    for trial in range(25):
        net = random_network(rng, 5, 10, 0.35)
        nodes = list(net.nodes)
        s = nodes[0]
        targets = tuple(nodes[1:])
        d = 2.0
        criteria = 2 if trial % 2 == 0 else 3
        q_edges = frozenset(e.index for e in net.edges[: len(net.edges) // 3])
        multi = sr.mc_multi_target(net, s, targets, d, criteria, q_edges)
        for t in targets:
            single = sr.mc_shortest(net, s, t, d, criteria, q_edges)
            assert multi[t] == single, f"target {t} disagrees"

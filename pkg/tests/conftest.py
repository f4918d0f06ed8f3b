"""Shared generators for randomized tests.

All randomness is seeded per test; instances are quadratic-mode digraphs
with the original route set to the single-agent shortest path, matching how
the solvers are exercised end to end.
"""
import random

import pytest

import saproute as sr
from saproute.solvers import scalar_shortest


def random_network(rng, n_lo=5, n_hi=12, density=0.3, coeff_lo=0.1,
                   coeff_hi=5.0):
    while True:
        n = rng.randint(n_lo, n_hi)
        nodes = list(range(n))
        edges = []
        for u in nodes:
            for v in nodes:
                if u != v and rng.random() < density:
                    a = rng.uniform(coeff_lo, coeff_hi)
                    b = rng.uniform(max(coeff_lo, 1e-3), coeff_hi)
                    edges.append((u, v, sr.CostFn.quadratic(a, b)))
        if edges:
            return sr.Network.build(sr.QUADRATIC, nodes, edges)


def random_instance(rng, demand=None, **kwargs):
    """Network plus an original route between node 0 and the last node."""
    while True:
        net = random_network(rng, **kwargs)
        q = scalar_shortest(net, 0, len(net.nodes) - 1, 1.0)
        if q is not None and len(q.vertices) >= 2:
            d = demand if demand is not None else rng.choice([1.0, 2.0, 5.0, 10.0])
            return net, sr.Route(q, d)


def random_costfn(rng, lo=0.1, hi=5.0):
    return sr.CostFn.quadratic(rng.uniform(lo, hi), rng.uniform(lo, hi))


def dominated_pair(rng, d):
    """Two alternatives P1, P2 to a common original route with P1 dominating
    P2, built at the cost-function level and returned as labeled paths.

    Rejection-samples until the criteria vectors certify dominance.
    """
    q_cost = sr.CostFn.quadratic(rng.uniform(1.0, 6.0), rng.uniform(1.0, 6.0))
    while True:
        lam_a2, lam_b2 = rng.uniform(0, 1), rng.uniform(0, 1)
        shared2 = sr.CostFn(sr.QUADRATIC, q_cost.slope * lam_a2, q_cost.base * lam_b2)
        lam_a1 = rng.uniform(0, lam_a2)  # derivative coefficient ordering
        lam_b1 = rng.uniform(0, 1)
        shared1 = sr.CostFn(sr.QUADRATIC, q_cost.slope * lam_a1, q_cost.base * lam_b1)
        alt2 = random_costfn(rng, 0.5, 5.0)
        total2 = sr.add_cost(alt2, shared2)
        # P1's total must stay below P2's at both ends of [0, d]
        base1 = rng.uniform(shared1.base + 1e-3, total2.base) \
            if total2.base > shared1.base + 1e-3 else None
        if base1 is None:
            continue
        slope_hi = (total2.slope * d * d + total2.base - base1) / (d * d)
        if slope_hi <= shared1.slope:
            continue
        slope1 = rng.uniform(shared1.slope, slope_hi)
        total1 = sr.CostFn(sr.QUADRATIC, slope1, base1)
        lab1 = _abstract_label(("s", "a", "t"), (101, 102), total1, shared1, d)
        lab2 = _abstract_label(("s", "b", "t"), (201, 202), total2, shared2, d)
        if sr.path_dominates(lab1, lab2):
            return lab1, lab2, q_cost


def _abstract_label(verts, edges, total, shared, d):
    from saproute.dominance import relabel
    return relabel(verts, edges, total, shared, d, 3)


@pytest.fixture
def rng():
    return random.Random(12345)

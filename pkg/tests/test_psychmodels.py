import math
import random

import pytest

import saproute as sr
from saproute.dominance import relabel
from saproute.psychmodels import (CFunction, cost_at, custom_split, make_parts,
                                  quotient_split, so_split)

from conftest import dominated_pair, random_costfn


def parts_disjoint(alt, orig):
    """Disjoint alternative/original pair (empty shared segment)."""
    zero = sr.CostFn.zero(sr.QUADRATIC)
    return make_parts(alt, zero, orig)


# the running example: tau_P = x^2 + 1, tau_Q = x^2 + 4, d = 2
EXAMPLE = parts_disjoint(sr.CostFn.quadratic(1, 1), sr.CostFn.quadratic(1, 4))
SYMMETRIC = parts_disjoint(sr.CostFn.quadratic(1, 2), sr.CostFn.quadratic(1, 2))


def random_parts(rng, d):
    alt = random_costfn(rng, 0.2, 5.0)
    orig = random_costfn(rng, 0.2, 5.0)
    shared = sr.CostFn.quadratic(rng.uniform(0, 2), rng.uniform(0, 2) + 1e-6)
    return sr.psychmodels.SplitParts(alt, orig, shared)


def test_overall_cost_examples():
    assert cost_at(parts_disjoint(sr.CostFn.quadratic(1, 2),
                                  sr.CostFn.quadratic(1, 2)), 2.0, 1.0) == 6.0
    # x = 0 routes everything over the original
    assert cost_at(EXAMPLE, 2.0, 0.0) == 2 * sr.eval_cost(sr.CostFn.quadratic(1, 4), 2)
    assert cost_at(EXAMPLE, 2.0, 1.25) == pytest.approx(6.625, rel=1e-12)
    with pytest.raises(sr.ModelError):
        cost_at(EXAMPLE, 2.0, 2.5)
    with pytest.raises(sr.ModelError):
        cost_at(EXAMPLE, 2.0, -0.1)


def test_overall_cost_public_wrapper():
    p_cost = sr.CostFn.quadratic(1, 1)
    q_cost = sr.CostFn.quadratic(1, 4)
    got = sr.overall_cost(p_cost, sr.CostFn.zero(sr.QUADRATIC), q_cost, 2.0, 1.25)
    assert got == pytest.approx(6.625, rel=1e-12)


def test_path_level_split_wrappers():
    net = sr.Network.build(sr.QUADRATIC, ["s", "t"],
                           [("s", "t", sr.CostFn.quadratic(1, 4)),
                            ("s", "t", sr.CostFn.quadratic(1, 1))])
    q = sr.Path(("s", "t"), (0,))
    p = sr.Path(("s", "t"), (1,))
    so = sr.split_system_optimum(net, p, q, 2.0)
    assert (so.x, so.cost) == (pytest.approx(1.25), pytest.approx(6.625))
    ue = sr.split_quotient(net, p, q, 2.0, CFunction.constant(1.0))
    assert ue.cost == pytest.approx(8.125, rel=1e-9)
    with pytest.raises(sr.ModelError):
        sr.split_system_optimum(net, sr.Path(("t",), ()), q, 2.0)


def test_system_optimum_split():
    sym = so_split(SYMMETRIC, 2.0)
    assert sym.x == pytest.approx(1.0, abs=1e-12)
    assert sym.cost == pytest.approx(6.0, rel=1e-12)
    res = so_split(EXAMPLE, 2.0)
    assert res.x == pytest.approx(1.25, rel=1e-12)
    assert res.cost == pytest.approx(6.625, rel=1e-12)
    assert res.boundary == "interior"


def test_system_optimum_matches_dense_grid_oracle():
    # cross-check the closed-form stationary points against a brute scan
    from saproute.oracle import oracle_so_split
    rng = random.Random(31)
    for _ in range(15):
        d = rng.choice([1.0, 2.0, 5.0])
        parts = random_parts(rng, d)
        exact = so_split(parts, d)
        x_grid = oracle_so_split(parts, d, grid=1_000_000)
        assert cost_at(parts, d, x_grid) == pytest.approx(exact.cost, rel=1e-6)


def test_quotient_split_user_equilibrium():
    ue = CFunction.constant(1.0)
    sym = quotient_split(SYMMETRIC, 2.0, ue)
    assert sym.x == pytest.approx(1.0, abs=1e-9)
    res = quotient_split(EXAMPLE, 2.0, ue)
    assert res.x == pytest.approx(1.75, rel=1e-9)
    assert res.cost == pytest.approx(8.125, rel=1e-9)
    assert res.per_agent_alt == pytest.approx(65 / 16, rel=1e-9)
    assert res.per_agent_orig == pytest.approx(65 / 16, rel=1e-9)


def test_quotient_split_linear_model():
    res = quotient_split(EXAMPLE, 2.0, CFunction.linear(1.0))
    assert res.x == pytest.approx(1.8385, abs=1e-3)
    assert res.cost == pytest.approx(8.703, abs=1e-2)
    # recompute the root of x^3 - 2x^2 + 9x - 16 with an independent method
    import numpy as np
    roots = [r.real for r in np.roots([1, -2, 9, -16]) if abs(r.imag) < 1e-9]
    assert res.x == pytest.approx(roots[0], abs=1e-10)


def test_quotient_split_boundaries():
    # alternative so bad nobody takes it under equilibrium
    bad = parts_disjoint(sr.CostFn.quadratic(1, 100), sr.CostFn.quadratic(1, 1))
    res = quotient_split(bad, 2.0, CFunction.constant(1.0))
    assert res.x == 0.0 and res.boundary == "clamped-0"
    good = parts_disjoint(sr.CostFn.quadratic(1, 1), sr.CostFn.quadratic(1, 100))
    res = quotient_split(good, 2.0, CFunction.constant(1.0))
    assert res.x == 2.0 and res.boundary == "clamped-d"


def test_quotient_requires_valid_control_function():
    with pytest.raises(sr.ModelError):
        quotient_split(EXAMPLE, 2.0, CFunction.constant(0.0))
    with pytest.raises(sr.ModelError):
        quotient_split(EXAMPLE, 2.0, CFunction.linear(-1.0))
    with pytest.raises(sr.ModelError):
        quotient_split(EXAMPLE, 2.0, CFunction.callback(lambda x: -1.0))
    with pytest.raises(sr.ModelError):
        quotient_split(EXAMPLE, 2.0, CFunction.callback(lambda x: 1.0 - x))


def test_custom_split():
    res = custom_split(EXAMPLE, 2.0, 0.5)
    assert res.x == 1.0
    with pytest.raises(sr.ModelError):
        custom_split(EXAMPLE, 2.0, 1.5)


def test_score_picks_minimum_and_breaks_ties():
    q_cost = sr.CostFn.quadratic(1, 4)
    cand1 = relabel(("s", "a", "t"), (1, 2), sr.CostFn.quadratic(1, 1),
                    sr.CostFn.zero(sr.QUADRATIC), 2.0, 3)
    cand2 = relabel(("s", "b", "t"), (3, 4), sr.CostFn.quadratic(1, 2.375),
                    sr.CostFn.zero(sr.QUADRATIC), 2.0, 3)
    model = sr.SystemOptimum()
    best, split = sr.score([cand1], q_cost, 2.0, model)
    assert best is cand1
    # cand2's system optimum cost is 8.0 (symmetric-ish), cand1's is 6.625
    best, split = sr.score([cand2, cand1], q_cost, 2.0, model)
    assert best is cand1 and split.cost == pytest.approx(6.625, rel=1e-9)
    with pytest.raises(sr.NoAlternativeError):
        sr.score([], q_cost, 2.0, model)


def test_score_with_q_as_candidate_never_beats_staying():
    d = 2.0
    q_cost = sr.CostFn.quadratic(1, 4)
    q_lab = relabel(("s", "t"), (0,), q_cost, q_cost, d, 3)
    for model in [sr.SystemOptimum(), sr.user_equilibrium(), sr.linear_model(1.0)]:
        best, split = sr.score([q_lab], q_cost, d, model)
        assert split.cost == pytest.approx(d * sr.eval_cost(q_cost, d), rel=1e-12)


def test_check_quotient_conformity():
    assert sr.check_quotient_conformity(CFunction.constant(1.0), 2.0)
    assert sr.check_quotient_conformity(CFunction.linear(1.0), 2.0)
    assert sr.check_quotient_conformity(CFunction.linear(0.25), 5.0)
    assert not sr.check_quotient_conformity(CFunction.constant(1.5), 2.0)
    for a in (0.5, 1.0, 3.0):
        assert sr.check_quotient_conformity(CFunction.tanh(a), 2.0)
    # linear with slope > 1 violates c(d) <= 1
    assert not sr.check_quotient_conformity(CFunction.linear(1.5), 2.0)


def test_check_quotient_conformity_callback_finite_difference():
    # sqrt control function: c*(1-c) - x*c' = c/2 - c^2 > 0 for small x
    assert not sr.check_quotient_conformity(
        CFunction.callback(lambda x: math.sqrt(x / 2.0)), 2.0)
    # a conforming callback (mirror of the linear model)
    assert sr.check_quotient_conformity(CFunction.callback(lambda x: x / 2.0), 2.0)


def test_parse_model():
    assert isinstance(sr.parse_model("so"), sr.SystemOptimum)
    ue = sr.parse_model("ue")
    assert isinstance(ue, sr.QuotientModel) and ue.c.kind == "constant"
    lin = sr.parse_model("linear:0.5")
    assert lin.c.kind == "linear" and lin.c.param == 0.5
    th = sr.parse_model("quotient:tanh:2")
    assert th.c.kind == "tanh" and th.c.param == 2.0
    for bad in ("nope", "linear:x", "quotient:tanh", "linear:"):
        with pytest.raises(sr.ModelError):
            sr.parse_model(bad)


def test_quotient_equation_is_strictly_decreasing():
    rng = random.Random(32)
    for _ in range(50):
        d = rng.choice([1.0, 2.0, 5.0])
        parts = random_parts(rng, d)
        c = rng.choice([CFunction.constant(1.0), CFunction.linear(0.5),
                        CFunction.tanh(1.0)])
        sh = sr.eval_cost(parts.shared, d)

        def f(x):
            return (sr.eval_cost(parts.orig_only, d - x) + sh
                    - c.value(x, d) * (sr.eval_cost(parts.alt_only, x) + sh))

        vals = [f(i * d / 200) for i in range(201)]
        assert all(b < a for a, b in zip(vals, vals[1:]))


def test_ue_interior_split_equalizes_per_agent_costs():
    rng = random.Random(33)
    ue = CFunction.constant(1.0)
    seen_interior = 0
    for _ in range(200):
        d = rng.choice([1.0, 2.0, 5.0, 10.0])
        parts = random_parts(rng, d)
        res = quotient_split(parts, d, ue)
        if res.boundary == "interior":
            seen_interior += 1
            assert res.per_agent_alt == pytest.approx(res.per_agent_orig, rel=1e-8)
    assert seen_interior > 50


def test_so_split_beats_random_splits_and_other_models():
    rng = random.Random(34)
    for _ in range(50):
        d = rng.choice([1.0, 2.0, 5.0])
        parts = random_parts(rng, d)
        best = so_split(parts, d)
        for _ in range(1000):
            x = rng.uniform(0, d)
            assert best.cost <= cost_at(parts, d, x) + 1e-9 * max(1, best.cost)
        for c in (CFunction.constant(1.0), CFunction.linear(1.0)):
            other = quotient_split(parts, d, c)
            assert best.cost <= other.cost + 1e-9 * max(1, best.cost)


def g_p(x, d, c):
    return (d - x) * c.value(x, d) + x


def g_q(x, d, c):
    frac = x / c.value(x, d) if x > 0 else 0.0
    return d + frac - x


def test_split_factorization_identities():
    # C equals g_P(x)*(alt-side) for x > 0 and g_Q(x)*(orig-side) for x < d
    rng = random.Random(35)
    for _ in range(200):
        d = rng.choice([1.0, 2.0, 5.0])
        parts = random_parts(rng, d)
        c = rng.choice([CFunction.constant(1.0), CFunction.linear(0.5),
                        CFunction.linear(1.0), CFunction.tanh(2.0)])
        res = quotient_split(parts, d, c)
        sh = sr.eval_cost(parts.shared, d)
        alt_side = sr.eval_cost(parts.alt_only, res.x) + sh
        orig_side = sr.eval_cost(parts.orig_only, d - res.x) + sh
        if res.x > 0:
            assert res.cost == pytest.approx(g_p(res.x, d, c) * alt_side, rel=1e-8)
        else:
            assert res.cost <= g_p(res.x, d, c) * alt_side + 1e-8
        if res.x < d:
            assert res.cost == pytest.approx(g_q(res.x, d, c) * orig_side, rel=1e-8)
        else:
            assert res.cost <= g_q(res.x, d, c) * orig_side + 1e-8


def test_core_inequalities_on_dominated_pairs():
    rng = random.Random(36)
    for _ in range(100):
        d = rng.choice([1.0, 2.0, 5.0])
        p1, p2, q_cost = dominated_pair(rng, d)
        parts1 = make_parts(p1.cost, p1.q_cost, q_cost)
        parts2 = make_parts(p2.cost, p2.q_cost, q_cost)
        sh1 = sr.eval_cost(parts1.shared, d)
        sh2 = sr.eval_cost(parts2.shared, d)
        x1, x2 = sorted([rng.uniform(0, d), rng.uniform(0, d)])
        left = sr.eval_cost(parts1.alt_only, x1) + sh1
        right = sr.eval_cost(parts2.alt_only, x2) + sh2
        assert left <= right + 1e-9 * max(1, abs(right))
        x1b, x2b = x2, x1  # now x1b >= x2b
        left = sr.eval_cost(parts1.orig_only, d - x1b) + sh1
        right = sr.eval_cost(parts2.orig_only, d - x2b) + sh2
        assert left <= right + 1e-9 * max(1, abs(right))


def test_dominated_pairs_never_score_worse():
    # smaller-scale version of the acceptance conformity sweep
    rng = random.Random(37)
    models = [sr.SystemOptimum(), sr.user_equilibrium(),
              sr.linear_model(0.5), sr.linear_model(1.0)]
    for _ in range(60):
        d = rng.choice([1.0, 2.0, 5.0])
        p1, p2, q_cost = dominated_pair(rng, d)
        for model in models:
            parts1 = make_parts(p1.cost, p1.q_cost, q_cost)
            parts2 = make_parts(p2.cost, p2.q_cost, q_cost)
            c1 = model.split(parts1, d, p1).cost
            c2 = model.split(parts2, d, p2).cost
            assert c1 <= c2 + 1e-8 * max(1, abs(c2))

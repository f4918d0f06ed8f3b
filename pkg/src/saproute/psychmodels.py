"""Driver route-choice models and the overall-cost machinery.

Given an original route Q carrying demand d and a suggested alternative P,
a model decides the flow x on P; the remaining d - x stays on Q.  The
overall travel time of that split is

    C(x) = x * tau_{P minus Q}(x) + (d - x) * tau_{Q minus P}(d - x)
         + d * tau_{P and Q}(d)

in agent-seconds.  The System Optimum minimizes C directly; the Quotient
family instead equates the per-agent cost ratio of Q over P with a
non-decreasing control function c(x) (c == 1 is the User Equilibrium,
c(x) = c*x/d the Linear model, c(x) = tanh(a*x/d) interpolates between
them); custom plugins may return an arbitrary fraction of d.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .network import QUADRATIC, CostFn, eval_cost, sub_cost

BISECT_REL_TOL = 1e-12
BISECT_MAX_ITER = 200
CONFORMITY_GRID = 10_000
CALLBACK_FD_STEP = 1e-6  # relative to d


class ModelError(ValueError):
    """Invalid model specification or plug-in behaviour."""


class NoAlternativeError(RuntimeError):
    """Raised when scoring receives an empty candidate set."""


@dataclass(frozen=True)
class SplitParts:
    """The three partial cost functions the split depends on."""

    alt_only: CostFn   # tau over P minus Q
    orig_only: CostFn  # tau over Q minus P
    shared: CostFn     # tau over P and Q


@dataclass(frozen=True)
class SplitResult:
    x: float
    cost: float
    per_agent_alt: float
    per_agent_orig: float
    boundary: str  # "interior" | "clamped-0" | "clamped-d"


def make_parts(p_cost: CostFn, p_q_cost: CostFn, q_cost: CostFn) -> SplitParts:
    return SplitParts(sub_cost(p_cost, p_q_cost), sub_cost(q_cost, p_q_cost),
                      p_q_cost)


def cost_at(parts: SplitParts, d: float, x: float) -> float:
    if x < 0 or x > d:
        raise ModelError(f"flow x={x} outside [0, {d}]")
    return (x * eval_cost(parts.alt_only, x)
            + (d - x) * eval_cost(parts.orig_only, d - x)
            + d * eval_cost(parts.shared, d))


def _result(parts: SplitParts, d: float, x: float) -> SplitResult:
    shared_d = eval_cost(parts.shared, d)
    boundary = "interior"
    if x <= 0.0:
        x, boundary = 0.0, "clamped-0"
    elif x >= d:
        x, boundary = d, "clamped-d"
    return SplitResult(x, cost_at(parts, d, x),
                       eval_cost(parts.alt_only, x) + shared_d,
                       eval_cost(parts.orig_only, d - x) + shared_d,
                       boundary)


def so_split(parts: SplitParts, d: float) -> SplitResult:
    """Global minimizer of C on [0, d] by exact stationary-point analysis.

    In quadratic mode C is cubic, so C' is a quadratic solved in closed
    form; in affine mode C is quadratic with one stationary point.
    """
    a1, b1 = parts.alt_only.slope, parts.alt_only.base
    a2, b2 = parts.orig_only.slope, parts.orig_only.base
    candidates = [0.0, d]
    if parts.alt_only.mode == QUADRATIC:
        # C'(x) = 3*a1*x^2 + b1 - 3*a2*(d-x)^2 - b2
        qa = 3.0 * (a1 - a2)
        qb = 6.0 * a2 * d
        qc = b1 - b2 - 3.0 * a2 * d * d
        if qa == 0.0:
            if qb != 0.0:
                candidates.append(-qc / qb)
        else:
            disc = qb * qb - 4.0 * qa * qc
            if disc >= 0.0:
                root = math.sqrt(disc)
                candidates.append((-qb + root) / (2.0 * qa))
                candidates.append((-qb - root) / (2.0 * qa))
    else:
        # C'(x) = 2*(b1+b2)*x + c1 - c2 - 2*b2*d
        if a1 + a2 > 0.0:
            candidates.append((2.0 * a2 * d + b2 - b1) / (2.0 * (a1 + a2)))
    best_x = None
    best_c = math.inf
    for x in candidates:
        if x < 0.0 or x > d:
            continue
        c = cost_at(parts, d, x)
        if c < best_c or (c == best_c and x < best_x):
            best_x, best_c = x, c
    return _result(parts, d, best_x)


def quotient_split(parts: SplitParts, d: float, c: "CFunction") -> SplitResult:
    """Unique root of tau_Q-side(x) = c(x) * tau_P-side(x), clamped to the
    boundary when no root exists in [0, d].

    Solved on the division-free form
    F(x) = tau_{Q\\P}(d-x) + tau_{P&Q}(d) - c(x)*(tau_{P\\Q}(x) + tau_{P&Q}(d)),
    which is strictly decreasing whenever the instance is non-degenerate,
    so plain bisection is unconditionally safe.
    """
    c.validate(d)
    shared_d = eval_cost(parts.shared, d)

    def f(x: float) -> float:
        return (eval_cost(parts.orig_only, d - x) + shared_d
                - c.value(x, d) * (eval_cost(parts.alt_only, x) + shared_d))

    if f(0.0) < 0.0:
        return _result(parts, d, 0.0)
    if f(d) > 0.0:
        return _result(parts, d, d)
    lo, hi = 0.0, d
    tol = BISECT_REL_TOL * d
    for _ in range(BISECT_MAX_ITER):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if f(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return _result(parts, d, 0.5 * (lo + hi))


def custom_split(parts: SplitParts, d: float, fraction: float) -> SplitResult:
    if not 0.0 <= fraction <= 1.0:
        raise ModelError(f"plug-in fraction {fraction} outside [0, 1]")
    return _result(parts, d, fraction * d)


@dataclass(frozen=True)
class CFunction:
    """Control function c(x) of the quotient family.

    kind is one of "constant", "linear", "tanh", "callback"; built-in kinds
    carry their parameter and an analytic derivative, callbacks get a
    central finite difference with step d * 1e-6.
    """

    kind: str
    param: float = 0.0
    fn: object = None

    @staticmethod
    def constant(kappa: float) -> "CFunction":
        return CFunction("constant", float(kappa))

    @staticmethod
    def linear(c: float) -> "CFunction":
        return CFunction("linear", float(c))

    @staticmethod
    def tanh(a: float) -> "CFunction":
        return CFunction("tanh", float(a))

    @staticmethod
    def callback(fn) -> "CFunction":
        return CFunction("callback", 0.0, fn)

    def value(self, x: float, d: float) -> float:
        if self.kind == "constant":
            return self.param
        if self.kind == "linear":
            return self.param * x / d
        if self.kind == "tanh":
            return math.tanh(self.param * x / d)
        return self.fn(x)

    def derivative(self, x: float, d: float) -> float:
        if self.kind == "constant":
            return 0.0
        if self.kind == "linear":
            return self.param / d
        if self.kind == "tanh":
            t = math.tanh(self.param * x / d)
            return self.param / d * (1.0 - t * t)
        h = d * CALLBACK_FD_STEP
        lo, hi = max(0.0, x - h), min(d, x + h)
        return (self.fn(hi) - self.fn(lo)) / (hi - lo)

    def validate(self, d: float) -> None:
        """c must be non-decreasing and non-negative on [0, d] with c(d) > 0."""
        if self.kind == "constant":
            if self.param <= 0:
                raise ModelError(f"constant c={self.param} must be > 0")
            return
        if self.kind in ("linear", "tanh"):
            if self.param <= 0:
                raise ModelError(f"{self.kind} parameter {self.param} must be > 0")
            return
        xs = [i * d / 256 for i in range(257)]
        vals = [self.fn(x) for x in xs]
        if vals[-1] <= 0:
            raise ModelError("callback c has c(d) <= 0")
        if any(v < 0 for v in vals):
            raise ModelError("callback c is negative on [0, d]")
        if any(b < a - 1e-12 for a, b in zip(vals, vals[1:])):
            raise ModelError("callback c is decreasing on [0, d]")


def check_quotient_conformity(c: CFunction, d: float) -> bool:
    """True iff c(d) <= 1 and c(x)*(1 - c(x)) - x*c'(x) <= 0 on a dense grid.

    These are the sufficient conditions for the quotient model to respect
    path dominance (dominating paths never score worse).
    """
    c.validate(d)
    if c.value(d, d) > 1.0:
        return False
    for i in range(CONFORMITY_GRID + 1):
        x = i * d / CONFORMITY_GRID
        cx = c.value(x, d)
        if cx * (1.0 - cx) - x * c.derivative(x, d) > 1e-9:
            return False
    return True


class SystemOptimum:
    """Agents distribute so that the overall travel time is minimal."""

    name = "so"

    def split(self, parts: SplitParts, d: float, candidate=None) -> SplitResult:
        return so_split(parts, d)


class QuotientModel:
    """Agents split so the cost ratio of Q over P equals c(x)."""

    def __init__(self, c: CFunction, name: str = "quotient"):
        self.c = c
        self.name = name

    def split(self, parts: SplitParts, d: float, candidate=None) -> SplitResult:
        return quotient_split(parts, d, self.c)


class CustomModel:
    """Plug-in model: fraction_fn(candidate, d) -> share of d routed to P."""

    def __init__(self, fraction_fn, name: str = "custom"):
        self.fraction_fn = fraction_fn
        self.name = name

    def split(self, parts: SplitParts, d: float, candidate=None) -> SplitResult:
        return custom_split(parts, d, self.fraction_fn(candidate, d))


def user_equilibrium() -> QuotientModel:
    return QuotientModel(CFunction.constant(1.0), "ue")


def linear_model(c: float) -> QuotientModel:
    return QuotientModel(CFunction.linear(c), f"linear:{c:g}")


def tanh_model(a: float) -> QuotientModel:
    return QuotientModel(CFunction.tanh(a), f"quotient:tanh:{a:g}")


def parse_model(spec: str):
    """Model selection grammar: so | ue | linear:<c> | quotient:tanh:<a>."""
    parts = spec.split(":")
    try:
        if parts == ["so"]:
            return SystemOptimum()
        if parts == ["ue"]:
            return user_equilibrium()
        if len(parts) == 2 and parts[0] == "linear":
            return linear_model(float(parts[1]))
        if len(parts) == 3 and parts[0] == "quotient" and parts[1] == "tanh":
            return tanh_model(float(parts[2]))
    except ValueError as exc:
        raise ModelError(f"bad model spec {spec!r}: {exc}") from None
    raise ModelError(f"unknown model spec {spec!r}")


def overall_cost(p_cost: CostFn, p_q_cost: CostFn, q_cost: CostFn,
                 d: float, x: float) -> float:
    """C(x) for alternative with total cost p_cost sharing p_q_cost with the
    original route of total cost q_cost."""
    return cost_at(make_parts(p_cost, p_q_cost, q_cost), d, x)


def path_parts(net, p, q) -> SplitParts:
    """SplitParts for alternative path p against original path q (both
    saproute.network.Path objects in net)."""
    if p.source != q.source or p.target != q.target:
        raise ModelError("alternative and original must share endpoints")
    q_ids = frozenset(q.edge_ids)
    return make_parts(p.cost_fn(net), p.shared_cost_fn(net, q_ids),
                      q.cost_fn(net))


def split_system_optimum(net, p, q, d: float) -> SplitResult:
    return so_split(path_parts(net, p, q), d)


def split_quotient(net, p, q, d: float, c: CFunction) -> SplitResult:
    return quotient_split(path_parts(net, p, q), d, c)


def score(candidates, q_cost: CostFn, d: float, model):
    """Pick the candidate with minimal overall travel time under the model.

    candidates: LabeledPath collection (Q itself may be among them).  Exact
    cost ties go to the lexicographically smaller (vertices, edges).
    Raises NoAlternativeError on an empty candidate set.
    """
    best: tuple | None = None
    for cand in candidates:
        parts = make_parts(cand.cost, cand.q_cost, q_cost)
        split = model.split(parts, d, cand)
        key = (split.cost, cand.tie_key())
        if best is None or key < best[0]:
            best = (key, cand, split)
    if best is None:
        raise NoAlternativeError("empty candidate set")
    return best[1], best[2]

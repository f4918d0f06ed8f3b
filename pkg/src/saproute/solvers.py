"""The single-alternative-path solver family.

Five solvers share one contract: generate a Pareto frontier of candidate
alternatives for the instance's variant, inject the original route Q as the
"suggest nothing" candidate, and score the set under the instance's
psychological model.

* ``solve_sap``        -- one 3-criteria search over the full network.
* ``solve_1d_sap``     -- 3-criteria search on a phase-expanded copy of the
                          network whose paths are exactly the single-diversion
                          alternatives (Q-edge prefix, Q-edge-free middle,
                          Q-edge suffix).
* ``solve_d_sap``      -- 2-criteria search with Q's edges removed.
* ``solve_1d_sap_fc``  -- per-divergence-point multi-target 2-criteria
                          searches, detours re-augmented with Q's ends.
* ``solve_sap_fc``     -- dynamic program combining the same detour sets with
                          reduced joins/unions under 3 criteria.

Variants are edge-based: "d-sap" alternatives share no edge with Q,
"1d-sap" alternatives have a contiguous non-Q segment (they may pass
through Q's vertices without using its edges).
"""
from __future__ import annotations

import heapq
import multiprocessing as _mp
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .dominance import LabeledPath, label_path, reduced_join, simple_cull
from .mcsp import mc_multi_target, mc_shortest
from .network import Network, NetworkError, Path, Route, eval_cost
from .psychmodels import score

VARIANTS = ("sap", "1d-sap", "d-sap")
ALGORITHMS = ("direct", "fc")


@dataclass(frozen=True)
class SapInstance:
    net: Network
    route: Route
    model: object
    variant: str = "sap"
    algorithm: str = "direct"

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise NetworkError(f"unknown variant {self.variant!r}")
        if self.algorithm not in ALGORITHMS:
            raise NetworkError(f"unknown algorithm {self.algorithm!r}")
        q = self.route.path
        if len(q.vertices) < 2:
            raise NetworkError("original route needs at least two vertices")
        if not q.is_simple():
            raise NetworkError("original route repeats a vertex")


@dataclass(frozen=True)
class Solution:
    path: Path
    x: float
    cost: float
    per_agent_alt: float
    per_agent_orig: float
    no_alternative: bool
    baseline_one_sp: float
    baseline_d_sp: float
    cost_all_on_orig: float
    frontier_size: int
    elapsed: float

    def key(self):
        """Everything that must be identical across runs and thread counts."""
        return (self.path, self.x, self.cost, self.per_agent_alt,
                self.per_agent_orig, self.no_alternative,
                self.baseline_one_sp, self.baseline_d_sp,
                self.cost_all_on_orig, self.frontier_size)


def scalar_shortest(net: Network, s, t, flow: float) -> Path | None:
    """Deterministic Dijkstra under edge weight tau_e(flow)."""
    if not (net.has_node(s) and net.has_node(t)):
        raise NetworkError("unknown endpoint")
    best: dict = {}
    heap = [(0.0, (s,), (), s)]
    while heap:
        dist, verts, edges, u = heapq.heappop(heap)
        if u in best:
            continue
        best[u] = (verts, edges)
        if u == t:
            return Path(verts, edges)
        for e in net.out_edges(u):
            if e.head in best:
                continue
            w = eval_cost(e.cost, flow)
            heapq.heappush(heap, (dist + w, verts + (e.head,),
                                  edges + (e.index,), e.head))
    return None


def baseline_sp(net: Network, s, t, d: float, load: float) -> tuple[Path, float]:
    """Shortest path assuming a flow of ``load`` on every edge; the reported
    cost routes the full demand d over it."""
    path = scalar_shortest(net, s, t, load)
    if path is None:
        raise NetworkError(f"no path {s!r} -> {t!r}")
    return path, d * eval_cost(path.cost_fn(net), d)


def _assemble(inst: SapInstance, frontier: list[LabeledPath],
              no_alternative: bool, started: float) -> Solution:
    net, q, d = inst.net, inst.route.path, inst.route.demand
    q_ids = frozenset(q.edge_ids)
    q_cost = q.cost_fn(net)
    candidates: dict = {}
    for lp in frontier:
        candidates.setdefault(lp.tie_key(), lp)
    q_lab = label_path(net, q.vertices, q.edge_ids, q_ids, d, 3)
    candidates.setdefault(q_lab.tie_key(), q_lab)
    best, split = score(candidates.values(), q_cost, d, inst.model)

    _, one_sp_cost = baseline_sp(net, q.source, q.target, d, 1.0)
    _, d_sp_cost = baseline_sp(net, q.source, q.target, d, d)
    return Solution(
        path=Path(best.vertices, best.edge_ids),
        x=split.x,
        cost=split.cost,
        per_agent_alt=split.per_agent_alt,
        per_agent_orig=split.per_agent_orig,
        no_alternative=no_alternative,
        baseline_one_sp=one_sp_cost,
        baseline_d_sp=d_sp_cost,
        cost_all_on_orig=d * eval_cost(q_cost, d),
        frontier_size=len(frontier),
        elapsed=time.perf_counter() - started,
    )


def solve_sap(inst: SapInstance, threads: int = 1) -> Solution:
    """Unrestricted alternatives: one 3-criteria search, then scoring."""
    started = time.perf_counter()
    q, d = inst.route.path, inst.route.demand
    q_ids = frozenset(q.edge_ids)
    frontier = mc_shortest(inst.net, q.source, q.target, d, 3, q_ids)
    return _assemble(inst, frontier, False, started)


# --- 1-disjoint via graph transformation ------------------------------------

@dataclass(frozen=True)
class Transform1D:
    """Phase-expanded network for single-diversion alternatives.

    Nodes are ("pre", i) while still on Q's edge prefix, ("mid", v) during
    the Q-edge-free middle, ("post", j) on Q's edge suffix, with all
    terminal states merged into ("tgt",).  Every simple source-target path
    maps (via orig_edge) to a 1-disjoint path of the base network with the
    identical cost function, and vice versa.
    """

    net: Network
    source: object
    target: object
    orig_edge: tuple[int, ...]
    q_edge_ids: frozenset


def transform_1d(net: Network, q: Path) -> Transform1D:
    if len(q.vertices) < 2:
        raise NetworkError("route needs at least two vertices")
    if not q.is_simple():
        raise NetworkError("route repeats a vertex")
    qn = len(q.vertices)
    t = q.target
    q_pos = {eid: k + 1 for k, eid in enumerate(q.edge_ids)}  # 1-based position
    on_q = {v: i + 1 for i, v in enumerate(q.vertices)}

    target = ("tgt",)

    def mid_node(v):
        return target if v == t else ("mid", v)

    def post_node(j):
        return target if j == qn else ("post", j)

    def pre_node(i):
        return target if i == qn else ("pre", i)

    nodes = [pre_node(i) for i in range(1, qn)]
    nodes += [("mid", v) for v in net.nodes if v != t]
    nodes += [("post", j) for j in range(2, qn)]
    nodes.append(target)

    edges = []       # (tail, head, cost)
    orig_edge = []   # original index per new edge
    q_new_ids = []

    def emit(tail, head, e, is_q):
        if is_q:
            q_new_ids.append(len(edges))
        edges.append((tail, head, e.cost))
        orig_edge.append(e.index)

    for e in net.edges:
        pos = q_pos.get(e.index)
        if pos is not None:
            emit(pre_node(pos), pre_node(pos + 1), e, True)       # stay on prefix
            emit(mid_node(e.tail), post_node(pos + 1), e, True)   # enter suffix
            if pos >= 2:
                emit(post_node(pos), post_node(pos + 1), e, True)  # stay on suffix
        else:
            if e.tail != t:
                emit(mid_node(e.tail), mid_node(e.head), e, False)
            i = on_q.get(e.tail)
            if i is not None and i < qn:
                emit(pre_node(i), mid_node(e.head), e, False)      # divert here
    tnet = Network.build(net.mode, nodes, edges)
    return Transform1D(tnet, pre_node(1), target, tuple(orig_edge),
                       frozenset(q_new_ids))


def solve_1d_sap(inst: SapInstance, threads: int = 1) -> Solution:
    started = time.perf_counter()
    net, q, d = inst.net, inst.route.path, inst.route.demand
    q_ids = frozenset(q.edge_ids)
    tr = transform_1d(net, q)
    raw = mc_shortest(tr.net, tr.source, tr.target, d, 3, tr.q_edge_ids)
    mapped = []
    for lp in raw:
        orig_ids = tuple(tr.orig_edge[eid] for eid in lp.edge_ids)
        path = Path.from_edges(net, orig_ids)
        if not path.is_simple():
            continue
        mapped.append(label_path(net, path.vertices, orig_ids, q_ids, d, 3))
    return _assemble(inst, simple_cull(mapped), False, started)


def solve_d_sap(inst: SapInstance, threads: int = 1) -> Solution:
    """Alternatives sharing no edge with Q; 2 criteria suffice because every
    candidate has an empty intersection with the original route."""
    started = time.perf_counter()
    net, q, d = inst.net, inst.route.path, inst.route.demand
    q_ids = frozenset(q.edge_ids)
    reduced, old_ids = net.drop_edges(q_ids)
    frontier2 = mc_shortest(reduced, q.source, q.target, d, 2)
    mapped = [label_path(net, lp.vertices,
                         tuple(old_ids[e] for e in lp.edge_ids), q_ids, d, 3)
              for lp in frontier2]
    return _assemble(inst, mapped, not mapped, started)


# --- fewer-criteria algorithms ----------------------------------------------

_WORKER_NET: Network | None = None
_WORKER_D: float = 0.0


def _pij_init(net: Network, d: float) -> None:
    global _WORKER_NET, _WORKER_D
    _WORKER_NET = net
    _WORKER_D = d


def _pij_task(args):
    source, targets = args
    result = mc_multi_target(_WORKER_NET, source, targets, _WORKER_D, 2)
    return {t: [(lp.vertices, lp.edge_ids) for lp in result[t]] for t in targets}


def detour_frontiers(net: Network, q: Path, d: float,
                     threads: int = 1) -> dict:
    """Pareto sets of Q-edge-free detours between route positions.

    Returns {(i, j): [LabeledPath]} for 1 <= i < j <= q, labeled in the base
    network with 3 criteria (their third component is identically zero).
    One multi-target search per divergence vertex; searches are independent
    and run on a worker pool when threads > 1.
    """
    q_ids = frozenset(q.edge_ids)
    reduced, old_ids = net.drop_edges(q_ids)
    qn = len(q.vertices)
    tasks = []
    for i in range(1, qn):
        targets = tuple(q.vertices[j - 1] for j in range(i + 1, qn + 1))
        tasks.append((q.vertices[i - 1], targets))

    if threads > 1 and len(tasks) > 1:
        ctx = _mp.get_context("fork")
        with ProcessPoolExecutor(max_workers=threads, mp_context=ctx,
                                 initializer=_pij_init,
                                 initargs=(reduced, d)) as pool:
            raw_results = list(pool.map(_pij_task, tasks))
    else:
        _pij_init(reduced, d)
        raw_results = [_pij_task(t) for t in tasks]

    out = {}
    for i, raw in enumerate(raw_results, start=1):
        for j in range(i + 1, qn + 1):
            frontier = raw[q.vertices[j - 1]]
            out[(i, j)] = [
                label_path(net, verts, tuple(old_ids[e] for e in edges),
                           q_ids, d, 3)
                for verts, edges in frontier
            ]
    return out


def _augmented_candidates(inst: SapInstance, pij: dict) -> list[LabeledPath]:
    net, q, d = inst.net, inst.route.path, inst.route.demand
    q_ids = frozenset(q.edge_ids)
    qn = len(q.vertices)
    out = []
    for (i, j), pieces in pij.items():
        prefix = q.edge_ids[:i - 1]
        suffix = q.edge_ids[j - 1:]
        for piece in pieces:
            full = prefix + piece.edge_ids + suffix
            path = Path.from_edges(net, full)
            if not path.is_simple():
                continue
            out.append(label_path(net, path.vertices, full, q_ids, d, 3))
    return out


def solve_1d_sap_fc(inst: SapInstance, threads: int = 1) -> Solution:
    started = time.perf_counter()
    pij = detour_frontiers(inst.net, inst.route.path, inst.route.demand,
                           threads)
    candidates = _augmented_candidates(inst, pij)
    return _assemble(inst, simple_cull(candidates), False, started)


def solve_sap_fc(inst: SapInstance, threads: int = 1) -> Solution:
    """Dynamic program over Q's positions: level j holds the reduced set of
    source-to-v_j paths, combined from earlier levels via reduced joins with
    the detour sets and with Q's next edge."""
    started = time.perf_counter()
    net, q, d = inst.net, inst.route.path, inst.route.demand
    q_ids = frozenset(q.edge_ids)
    qn = len(q.vertices)
    pij = detour_frontiers(net, q, d, threads)

    levels: list[list[LabeledPath]] = [[] for _ in range(qn + 1)]
    levels[1] = [label_path(net, (q.source,), (), q_ids, d, 3)]
    for j in range(2, qn + 1):
        pool: list[LabeledPath] = []
        for i in range(1, j):
            pool.extend(reduced_join(levels[i], pij[(i, j)], d, 3))
        q_edge = q.edge_ids[j - 2]
        step = [label_path(net, q.vertices[j - 2:j], (q_edge,), q_ids, d, 3)]
        pool.extend(reduced_join(levels[j - 1], step, d, 3))
        levels[j] = simple_cull(pool)
    return _assemble(inst, levels[qn], False, started)


_SOLVERS = {
    ("sap", "direct"): solve_sap,
    ("sap", "fc"): solve_sap_fc,
    ("1d-sap", "direct"): solve_1d_sap,
    ("1d-sap", "fc"): solve_1d_sap_fc,
    ("d-sap", "direct"): solve_d_sap,
    ("d-sap", "fc"): solve_d_sap,
}


def solve(inst: SapInstance, threads: int = 1) -> Solution:
    return _SOLVERS[(inst.variant, inst.algorithm)](inst, threads)

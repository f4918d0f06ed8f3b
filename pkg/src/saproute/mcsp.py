"""Multi-criteria shortest path search with Pareto label sets per node.

Label-setting A* over criteria vectors: each label is a simple partial
path; per-node frontiers prune dominated labels, and (single-target only)
two reverse Dijkstra runs over the slope and base coefficients give an
admissible componentwise lower bound used both in the queue order and to
prune against the settled target frontier.

Exact vector ties keep the lexicographically smaller (vertex, edge)
sequence, which makes results deterministic and independent of scheduling.
"""
from __future__ import annotations

import heapq
from math import inf

from .dominance import LabeledPath, label_path, simple_cull
from .network import Network, NetworkError, demand_power


def build_heuristic(net: Network, target) -> dict:
    """Per-node componentwise lower bounds toward ``target``.

    Returns {node: (h_a, h_b)} where h_a / h_b are the shortest distances
    to the target under edge weight = slope / base coefficient, computed on
    the reversed graph.  Unreachable nodes get (inf, inf).
    """
    if not net.has_node(target):
        raise NetworkError(f"unknown node {target!r}")
    idx = {v: i for i, v in enumerate(net.nodes)}
    ha, hb = _heuristic_arrays(net, idx, idx[target])
    return {v: (ha[i], hb[i]) for v, i in idx.items()}


def _heuristic_arrays(net: Network, idx: dict, t_idx: int) -> tuple[list, list]:
    n = len(net.nodes)
    radj: list[list] = [[] for _ in range(n)]
    for e in net.edges:
        radj[idx[e.head]].append((idx[e.tail], e.cost.slope, e.cost.base))

    def dijkstra(weight_pos: int) -> list:
        dist = [inf] * n
        dist[t_idx] = 0.0
        heap = [(0.0, t_idx)]
        while heap:
            du, u = heapq.heappop(heap)
            if du > dist[u]:
                continue
            for v, w_slope, w_base in radj[u]:
                dv = du + (w_slope if weight_pos == 0 else w_base)
                if dv < dist[v]:
                    dist[v] = dv
                    heapq.heappush(heap, (dv, v))
        return dist

    return dijkstra(0), dijkstra(1)


def _check_criteria(criteria: int, q_edges) -> frozenset:
    if criteria not in (2, 3):
        raise NetworkError(f"criteria must be 2 or 3, got {criteria}")
    return frozenset(q_edges or ())


def _frontier_insert(front: list, vec, key, dom) -> bool:
    """Insert (vec, key) into a node frontier under dominance-with-tiebreak.

    Returns False if an existing entry eliminates the candidate; otherwise
    removes entries the candidate eliminates and appends it.
    """
    for ivec, ikey in front:
        if dom(ivec, vec) and (ivec != vec or ikey <= key):
            return False
    front[:] = [(ivec, ikey) for ivec, ikey in front
                if not (dom(vec, ivec) and (vec != ivec or key < ikey))]
    front.append((vec, key))
    return True


def _search(net: Network, source, targets, d: float, criteria: int,
            q_edges, single_target: bool) -> dict:
    """Shared label-setting core.  Returns {target: [(verts, edges), ...]}."""
    q_edges = _check_criteria(criteria, q_edges)
    if d <= 0:
        raise NetworkError(f"demand d={d} must be > 0")
    if not net.has_node(source):
        raise NetworkError(f"unknown node {source!r}")
    for t in targets:
        if not net.has_node(t):
            raise NetworkError(f"unknown node {t!r}")

    idx = {v: i for i, v in enumerate(net.nodes)}
    n = len(net.nodes)
    dk = demand_power(net.mode, d)
    three = criteria == 3

    # adjacency with precomputed per-edge criteria contributions
    adj: list[list] = [[] for _ in range(n)]
    for e in net.edges:
        c1 = e.cost.base
        c2 = e.cost.base + e.cost.slope * dk
        c3 = e.cost.slope if e.index in q_edges else 0.0
        adj[idx[e.tail]].append((idx[e.head], e.head, e.index, c1, c2, c3))

    if three:
        def dom(u, v):
            return u[0] <= v[0] and u[1] <= v[1] and u[2] <= v[2]
    else:
        def dom(u, v):
            return u[0] <= v[0] and u[1] <= v[1]

    target_idx = {idx[t] for t in targets}
    use_astar = single_target and len(target_idx) == 1
    if use_astar:
        t_idx = next(iter(target_idx))
        ha, hb = _heuristic_arrays(net, idx, t_idx)
        if hb[idx[source]] == inf and idx[source] != t_idx:
            return {t: [] for t in targets}

    fronts: list[list] = [[] for _ in range(n)]
    settled: dict[int, list] = {ti: [] for ti in target_idx}
    target_vecs: list = []  # settled vectors at the single target, for pruning

    s_idx = idx[source]
    zero = (0.0, 0.0, 0.0) if three else (0.0, 0.0)
    start_key = ((source,), ())
    fronts[s_idx].append((zero, start_key))
    heap = [(0.0, zero, (source,), (), s_idx)]

    while heap:
        _, vec, verts, edges, ni = heapq.heappop(heap)
        key = (verts, edges)
        if (vec, key) not in fronts[ni]:
            continue  # eliminated after being queued
        if ni in target_idx:
            settled[ni].append(key)
            if use_astar:
                target_vecs.append(vec)
                continue  # s-t labels never extend to another simple s-t path
        if use_astar and target_vecs:
            # the target frontier may have grown since this label was queued
            rb = hb[ni]
            pa1 = vec[0] + rb
            pa2 = vec[1] + ha[ni] * dk + rb
            paug = (pa1, pa2, vec[2]) if three else (pa1, pa2)
            if any(dom(tv, paug) for tv in target_vecs):
                continue
        for mi, head, eid, c1, c2, c3 in adj[ni]:
            if head in verts:
                continue
            if three:
                nvec = (vec[0] + c1, vec[1] + c2, vec[2] + c3)
            else:
                nvec = (vec[0] + c1, vec[1] + c2)
            if use_astar:
                rb = hb[mi]
                if rb == inf:
                    continue
                aug1 = nvec[0] + rb
                aug2 = nvec[1] + ha[mi] * dk + rb
                if three:
                    aug = (aug1, aug2, nvec[2])
                    f = aug1 + aug2 + nvec[2]
                else:
                    aug = (aug1, aug2)
                    f = aug1 + aug2
                if any(dom(tv, aug) for tv in target_vecs):
                    continue
            else:
                f = nvec[0] + nvec[1] + (nvec[2] if three else 0.0)
            nverts = verts + (head,)
            nedges = edges + (eid,)
            if not _frontier_insert(fronts[mi], nvec, (nverts, nedges), dom):
                continue
            heapq.heappush(heap, (f, nvec, nverts, nedges, mi))

    return {t: settled[idx[t]] for t in targets}


def _canonical_frontier(net: Network, raw_keys, q_edges, d, criteria) -> list[LabeledPath]:
    labeled = [label_path(net, verts, edges, q_edges, d, criteria)
               for verts, edges in raw_keys]
    return simple_cull(labeled)


def mc_shortest(net: Network, s, t, d: float, criteria: int = 2,
                q_edges=()) -> list[LabeledPath]:
    """All Pareto-optimal simple s-t paths under the componentwise vector
    order; with 3 criteria each edge also contributes its derivative
    coefficient when it lies on the original route."""
    if s == t:
        raise NetworkError("source equals target")
    q_edges = frozenset(q_edges or ())
    raw = _search(net, s, (t,), d, criteria, q_edges, single_target=True)[t]
    return _canonical_frontier(net, raw, q_edges, d, criteria)


def mc_multi_target(net: Network, s, targets, d: float, criteria: int = 2,
                    q_edges=()) -> dict:
    """One search from ``s`` producing the Pareto frontier at every target."""
    targets = tuple(targets)
    q_edges = frozenset(q_edges or ())
    raw = _search(net, s, targets, d, criteria, q_edges, single_target=False)
    return {t: _canonical_frontier(net, raw[t], q_edges, d, criteria)
            for t in targets}

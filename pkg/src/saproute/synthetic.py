"""Synthetic benchmark networks.

The grid fixture models a city block pattern with a fast corridor across
the middle: the single-agent shortest route concentrates on the corridor,
which congests badly once demand climbs into the hundreds, and the parallel
streets (same capacity, lower speed) become worthwhile relief.  With equal
capacities everywhere the congestion sensitivity of a route scales with its
free-flow time, which keeps the equilibrium split close to the system-
optimal one at high demand while the linear model overshoots it.
"""
from __future__ import annotations

import random

from .network import Network, Route, bpr_to_costfn
from .solvers import scalar_shortest

CORRIDOR_SPEED = 25.0   # m/s
CORRIDOR_CAP = 120.0    # flow units
STREET_SPEED = 16.0
STREET_CAP = 120.0
BLOCK_LEN = 100.0


def grid_network(width: int, height: int, seed: int = 0,
                 corridor_row: int | None = None) -> Network:
    """Directed width x height grid (both directions on every block).

    Horizontal edges on ``corridor_row`` (default: middle row) are fast and
    low-capacity; everything else is a regular street.  Node id of cell
    (row, col) is row*width + col.
    """
    rng = random.Random(seed)
    if corridor_row is None:
        corridor_row = height // 2
    nodes = list(range(width * height))
    edges = []

    def add(u, v, on_corridor):
        length = BLOCK_LEN * rng.uniform(0.9, 1.1)
        if on_corridor:
            cost = bpr_to_costfn(length, CORRIDOR_SPEED, CORRIDOR_CAP)
        else:
            cost = bpr_to_costfn(length, STREET_SPEED, STREET_CAP)
        edges.append((u, v, cost))

    for r in range(height):
        for c in range(width):
            u = r * width + c
            if c + 1 < width:
                v = u + 1
                corridor = r == corridor_row
                add(u, v, corridor)
                add(v, u, corridor)
            if r + 1 < height:
                v = u + width
                add(u, v, False)
                add(v, u, False)
    return Network.build("quadratic", nodes, edges)


def corridor_instance(width: int, height: int, demand: float, seed: int = 0,
                      hops: int | None = None) -> tuple[Network, Route]:
    """Grid plus an original route along the corridor.

    The route is the single-agent shortest path between two corridor nodes
    ``hops`` columns apart (default: full width), which follows the fast
    corridor by construction.
    """
    net = grid_network(width, height, seed)
    row = height // 2
    if hops is None:
        hops = width - 1
    start_col = (width - 1 - hops) // 2
    s = row * width + start_col
    t = row * width + start_col + hops
    q = scalar_shortest(net, s, t, 1.0)
    if q is None:
        raise AssertionError("grid is connected by construction")
    return net, Route(q, demand)

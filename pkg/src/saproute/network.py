"""Road network model: congestion cost functions, graphs, and file ingestion.

Cost functions come in two closed families, selected once per network:

* quadratic ``a*x**2 + b`` -- the canonical congestion shape (BPR with
  exponent 2 maps onto it),
* affine ``b*x + c`` -- used for instances whose edges are linear in the
  flow, e.g. the subset-sum reduction networks.

Both families are closed under addition and two distinct members cross at
most once on ``[0, inf)``, which is what makes the two-point criteria
vector ``(tau(0), tau(d))`` an exact Pareto representation of the pointwise
order on ``[0, d]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

QUADRATIC = "quadratic"
AFFINE = "affine"

BPR_ALPHA = 0.15
BPR_BETA = 2


class NetworkError(ValueError):
    """Raised for malformed network/route input or inconsistent queries."""


@dataclass(frozen=True)
class CostFn:
    """A congestion cost function tau(x) = slope*x**2 + base (quadratic mode)
    or tau(x) = slope*x + base (affine mode).

    ``base`` is always tau(0).  ``slope`` is the single coefficient that
    orders the derivatives within the family: quadratic derivatives 2*a*x
    are ordered by a, affine derivatives are the constant b.
    """

    mode: str
    slope: float
    base: float

    @staticmethod
    def quadratic(a: float, b: float) -> "CostFn":
        if a < 0:
            raise NetworkError(f"quadratic congestion coefficient a={a} must be >= 0")
        if b <= 0:
            raise NetworkError(f"quadratic free-flow time b={b} must be > 0")
        return CostFn(QUADRATIC, float(a), float(b))

    @staticmethod
    def affine(b: float, c: float) -> "CostFn":
        if b < 0 or c < 0:
            raise NetworkError(f"affine coefficients b={b}, c={c} must be >= 0")
        if b == 0 and c == 0:
            raise NetworkError("affine edge with b=0 and c=0 is a zero cost function")
        return CostFn(AFFINE, float(b), float(c))

    @staticmethod
    def zero(mode: str) -> "CostFn":
        # Identity of the additive family; only path accumulators build it.
        return CostFn(mode, 0.0, 0.0)


def bpr_to_costfn(length: float, speed: float, capacity: float,
                  alpha: float = BPR_ALPHA, beta: float = BPR_BETA) -> CostFn:
    """Convert a BPR-style edge (length/speed * (1 + alpha*(x/cap)**beta))
    into a quadratic CostFn.  Only beta == 2 fits the quadratic family.
    """
    if length <= 0 or speed <= 0 or capacity <= 0:
        raise NetworkError("bpr parameters length, speed, capacity must be > 0")
    if beta != 2:
        raise NetworkError(f"bpr beta={beta} unsupported in quadratic mode (need beta=2)")
    free_flow = length / speed
    return CostFn.quadratic(free_flow * alpha / capacity**2, free_flow)


def add_cost(t1: CostFn, t2: CostFn) -> CostFn:
    if t1.mode != t2.mode:
        raise NetworkError(f"cost mode mismatch: {t1.mode} vs {t2.mode}")
    return CostFn(t1.mode, t1.slope + t2.slope, t1.base + t2.base)


def sub_cost(t1: CostFn, t2: CostFn) -> CostFn:
    """t1 - t2, defined when t2 is a sub-sum of t1 (e.g. P minus P-and-Q)."""
    if t1.mode != t2.mode:
        raise NetworkError(f"cost mode mismatch: {t1.mode} vs {t2.mode}")
    return CostFn(t1.mode, t1.slope - t2.slope, t1.base - t2.base)


def eval_cost(t: CostFn, x: float) -> float:
    if x < 0:
        raise NetworkError(f"flow x={x} must be >= 0")
    if t.mode == QUADRATIC:
        return t.slope * x * x + t.base
    return t.slope * x + t.base


def demand_power(mode: str, d: float) -> float:
    """tau(d) - tau(0) = slope * demand_power(mode, d)."""
    return d * d if mode == QUADRATIC else d


def pareto_point(t: CostFn, d: float) -> tuple[float, float]:
    """(tau(0), tau(d)): componentwise order of these pairs is exactly the
    pointwise order of the functions on [0, d]."""
    if d <= 0:
        raise NetworkError(f"demand d={d} must be > 0")
    return (t.base, t.base + t.slope * demand_power(t.mode, d))


def derivative_coeff(t: CostFn) -> float:
    """Pareto representation of the derivative family (dimension 1)."""
    return t.slope


@dataclass(frozen=True)
class Edge:
    index: int
    tail: object
    head: object
    cost: CostFn


@dataclass(frozen=True)
class Network:
    """Immutable directed multigraph with one cost mode for all edges.

    Node ids can be any hashable, mutually orderable values (strings when
    loaded from a file).  Parallel edges are allowed and are distinguished
    by their index.
    """

    mode: str
    nodes: tuple
    edges: tuple[Edge, ...]
    coords: dict = field(default_factory=dict, compare=False)
    _out: dict = field(default_factory=dict, compare=False, repr=False)
    _node_set: frozenset = field(default=frozenset(), compare=False, repr=False)

    @staticmethod
    def build(mode, nodes, edges, coords=None):
        """edges: iterable of (tail, head, CostFn)."""
        if mode not in (QUADRATIC, AFFINE):
            raise NetworkError(f"unknown cost mode {mode!r}")
        node_tuple = tuple(nodes)
        node_set = frozenset(node_tuple)
        if len(node_set) != len(node_tuple):
            raise NetworkError("duplicate node id")
        edge_objs = []
        out: dict = {v: [] for v in node_tuple}
        for i, (tail, head, cost) in enumerate(edges):
            if tail not in node_set or head not in node_set:
                missing = tail if tail not in node_set else head
                raise NetworkError(f"dangling node reference {missing!r} in edge {tail!r}->{head!r}")
            if tail == head:
                raise NetworkError(f"self-loop at node {tail!r}")
            if cost.mode != mode:
                raise NetworkError(f"edge {tail!r}->{head!r} mode {cost.mode} in {mode} network")
            e = Edge(i, tail, head, cost)
            edge_objs.append(e)
            out[tail].append(e)
        return Network(mode, node_tuple, tuple(edge_objs), dict(coords or {}),
                       out, node_set)

    def has_node(self, v) -> bool:
        return v in self._node_set

    def out_edges(self, v) -> list:
        return self._out[v]

    def zero_cost(self) -> CostFn:
        return CostFn.zero(self.mode)

    def drop_edges(self, edge_ids) -> tuple["Network", tuple[int, ...]]:
        """Copy of the network without the given edge indices.

        Returns (network, old_ids) where old_ids[i] is the index the i-th
        surviving edge had in this network.
        """
        dropped = frozenset(edge_ids)
        kept = [(e.tail, e.head, e.cost) for e in self.edges if e.index not in dropped]
        old_ids = tuple(e.index for e in self.edges if e.index not in dropped)
        return Network.build(self.mode, self.nodes, kept, self.coords), old_ids


@dataclass(frozen=True)
class Path:
    """A walk given by its edge index sequence in a fixed network.

    Parallel edges make vertex sequences ambiguous, so edges are the
    identity; the vertex tuple is derived and cached for display and
    tie-breaking.
    """

    vertices: tuple
    edge_ids: tuple[int, ...]

    @staticmethod
    def from_edges(net: Network, edge_ids) -> "Path":
        edge_ids = tuple(edge_ids)
        if not edge_ids:
            raise NetworkError("empty edge list; use Path.trivial for a single vertex")
        verts = [net.edges[edge_ids[0]].tail]
        for eid in edge_ids:
            e = net.edges[eid]
            if e.tail != verts[-1]:
                raise NetworkError(f"edge {eid} tail {e.tail!r} does not continue {verts[-1]!r}")
            verts.append(e.head)
        return Path(tuple(verts), edge_ids)

    @staticmethod
    def trivial(vertex) -> "Path":
        return Path((vertex,), ())

    @staticmethod
    def from_vertices(net: Network, vertices) -> "Path":
        """Resolve a vertex sequence to edges; ambiguous consecutive pairs
        (parallel edges) resolve to the first-declared edge."""
        vertices = tuple(vertices)
        if len(vertices) < 2:
            return Path(vertices, ())
        ids = []
        for u, v in zip(vertices, vertices[1:]):
            if not net.has_node(u) or not net.has_node(v):
                missing = u if not net.has_node(u) else v
                raise NetworkError(f"unknown node {missing!r} in route")
            cands = [e for e in net.out_edges(u) if e.head == v]
            if not cands:
                raise NetworkError(f"no edge {u!r}->{v!r} in network")
            ids.append(min(c.index for c in cands))
        return Path(vertices, tuple(ids))

    def is_simple(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices)

    def cost_fn(self, net: Network) -> CostFn:
        total = net.zero_cost()
        for eid in self.edge_ids:
            total = add_cost(total, net.edges[eid].cost)
        return total

    def shared_cost_fn(self, net: Network, edge_set) -> CostFn:
        """Sum of cost functions over the edges also contained in edge_set."""
        total = net.zero_cost()
        for eid in self.edge_ids:
            if eid in edge_set:
                total = add_cost(total, net.edges[eid].cost)
        return total

    @property
    def source(self):
        return self.vertices[0]

    @property
    def target(self):
        return self.vertices[-1]


@dataclass(frozen=True)
class Route:
    """An origin-destination route with the demand it carries."""

    path: Path
    demand: float

    def __post_init__(self):
        if self.demand <= 0:
            raise NetworkError(f"route demand {self.demand} must be > 0")


def _parse_kv(tokens, line_no, allowed):
    vals = {}
    for tok in tokens:
        if "=" not in tok:
            raise NetworkError(f"line {line_no}: expected key=value, got {tok!r}")
        key, _, raw = tok.partition("=")
        if key not in allowed:
            raise NetworkError(f"line {line_no}: unknown key {key!r}")
        try:
            vals[key] = float(raw)
        except ValueError:
            raise NetworkError(f"line {line_no}: bad number {raw!r}") from None
    return vals


def parse_network(text: str) -> Network:
    """Parse the line-oriented network format.

    ::

        # comment
        mode quadratic            (or: mode affine)
        node <id> [<lon> <lat>]
        edge <tail> <head> a=<f> b=<f>      (quadratic coefficients)
        edge <tail> <head> b=<f> c=<f>      (affine coefficients)
        edge <tail> <head> bpr len=<f> speed=<f> cap=<f>
    """
    mode = None
    nodes: list = []
    coords: dict = {}
    edges: list = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "mode":
            if mode is not None:
                raise NetworkError(f"line {line_no}: duplicate mode declaration")
            if len(tokens) != 2 or tokens[1] not in (QUADRATIC, AFFINE):
                raise NetworkError(f"line {line_no}: mode must be quadratic or affine")
            mode = tokens[1]
        elif kind == "node":
            if len(tokens) not in (2, 4):
                raise NetworkError(f"line {line_no}: node takes an id and optional lon lat")
            nodes.append(tokens[1])
            if len(tokens) == 4:
                try:
                    coords[tokens[1]] = (float(tokens[2]), float(tokens[3]))
                except ValueError:
                    raise NetworkError(f"line {line_no}: bad coordinates") from None
        elif kind == "edge":
            if mode is None:
                raise NetworkError(f"line {line_no}: edge before mode declaration")
            if len(tokens) < 4:
                raise NetworkError(f"line {line_no}: edge needs tail, head and coefficients")
            tail, head = tokens[1], tokens[2]
            if tokens[3] == "bpr":
                if mode != QUADRATIC:
                    raise NetworkError(f"line {line_no}: bpr edges require quadratic mode")
                vals = _parse_kv(tokens[4:], line_no, ("len", "speed", "cap"))
                if set(vals) != {"len", "speed", "cap"}:
                    raise NetworkError(f"line {line_no}: bpr edge needs len=, speed=, cap=")
                try:
                    cost = bpr_to_costfn(vals["len"], vals["speed"], vals["cap"])
                except NetworkError as exc:
                    raise NetworkError(f"line {line_no}: {exc}") from None
            else:
                keys = ("a", "b") if mode == QUADRATIC else ("b", "c")
                vals = _parse_kv(tokens[3:], line_no, keys)
                if set(vals) != set(keys):
                    raise NetworkError(
                        f"line {line_no}: {mode} edge needs {keys[0]}= and {keys[1]}=")
                try:
                    if mode == QUADRATIC:
                        cost = CostFn.quadratic(vals["a"], vals["b"])
                    else:
                        cost = CostFn.affine(vals["b"], vals["c"])
                except NetworkError as exc:
                    raise NetworkError(f"line {line_no}: {exc}") from None
            edges.append((tail, head, cost))
        else:
            raise NetworkError(f"line {line_no}: unknown directive {kind!r}")
    if mode is None:
        raise NetworkError("missing mode declaration")
    return Network.build(mode, nodes, edges, coords)


def parse_route(text: str, net: Network) -> Route:
    """Parse a route file: ``route <d> <v1> <v2> ... <vq>``."""
    route = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] != "route":
            raise NetworkError(f"line {line_no}: unknown directive {tokens[0]!r}")
        if route is not None:
            raise NetworkError(f"line {line_no}: multiple routes (one OD pair per instance)")
        if len(tokens) < 4:
            raise NetworkError(f"line {line_no}: route needs a demand and >= 2 vertices")
        try:
            demand = float(tokens[1])
        except ValueError:
            raise NetworkError(f"line {line_no}: bad demand {tokens[1]!r}") from None
        path = Path.from_vertices(net, tokens[2:])
        if not path.is_simple():
            raise NetworkError(f"line {line_no}: route repeats a vertex")
        route = Route(path, demand)
    if route is None:
        raise NetworkError("route file contains no route")
    return route


def format_network(net: Network) -> str:
    """Serialize a network back into the line-oriented file format."""
    lines = [f"mode {net.mode}"]
    for v in net.nodes:
        if v in net.coords:
            lon, lat = net.coords[v]
            lines.append(f"node {v} {lon!r} {lat!r}")
        else:
            lines.append(f"node {v}")
    for e in net.edges:
        if net.mode == QUADRATIC:
            lines.append(f"edge {e.tail} {e.head} a={e.cost.slope!r} b={e.cost.base!r}")
        else:
            lines.append(f"edge {e.tail} {e.head} b={e.cost.slope!r} c={e.cost.base!r}")
    return "\n".join(lines) + "\n"


def format_route(route: Route) -> str:
    verts = " ".join(str(v) for v in route.path.vertices)
    return f"route {route.demand!r} {verts}\n"

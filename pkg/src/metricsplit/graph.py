"""Weighted graphs with exact rational edge weights.

Vertices are labelled ``1..n``.  An edge is stored as an ordered pair
``(u, v)`` with ``u < v``; weights are :class:`fractions.Fraction`.
Graphs are treated as immutable values: every operation returns a new graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

Edge = tuple[int, int]
Weighting = dict[Edge, Fraction]


class GraphError(ValueError):
    """Raised for graphs that violate the simple/connected/nonnegative contract."""


class GraphFormatError(GraphError):
    """Raised by :func:`parse_graph` for malformed input text."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def as_fraction(value) -> Fraction:
    """Exact conversion; strings are read as decimal literals."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        # floats are exact binary rationals, but "0.1" should mean 1/10
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True)
class WeightedGraph:
    n: int
    weights: Mapping[Edge, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise GraphError(f"graph must have at least one vertex, got n={self.n}")
        normalized: Weighting = {}
        for (u, v), w in self.weights.items():
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise GraphError(f"edge {u}-{v} has an endpoint outside 1..{self.n}")
            key = edge_key(u, v)
            if key in normalized:
                raise GraphError(f"parallel edge {key[0]}-{key[1]}")
            w = as_fraction(w)
            if w < 0:
                raise GraphError(f"negative weight {w} on edge {key[0]}-{key[1]}")
            normalized[key] = w
        object.__setattr__(self, "weights", dict(sorted(normalized.items())))
        if not _connected(self.n, self.weights):
            raise GraphError("graph is disconnected")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple], weight=1) -> WeightedGraph:
        """Build from ``(u, v)`` or ``(u, v, w)`` tuples; 2-tuples get ``weight``."""
        weights = {}
        for e in edges:
            u, v = e[0], e[1]
            key = edge_key(u, v)
            if key in weights:
                raise GraphError(f"parallel edge {key[0]}-{key[1]}")
            weights[key] = as_fraction(e[2] if len(e) > 2 else weight)
        return cls(n, weights)

    @property
    def edges(self) -> list[Edge]:
        return list(self.weights)

    @property
    def m(self) -> int:
        return len(self.weights)

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in range(1, self.n + 1)}
        for u, v in self.weights:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.weights if v in e)

    def max_weight(self) -> Fraction:
        return max(self.weights.values(), default=Fraction(0))

    def reweighted(self, weights: Mapping[Edge, Fraction]) -> WeightedGraph:
        """Same topology, new weights. ``weights`` must cover exactly the edge set."""
        keys = {edge_key(*e) for e in weights}
        if keys != set(self.weights):
            raise GraphError("weighting does not match the graph's edge set")
        return WeightedGraph(self.n, {edge_key(*e): w for e, w in weights.items()})

    def scaled(self, r) -> WeightedGraph:
        r = as_fraction(r)
        return WeightedGraph(self.n, {e: r * w for e, w in self.weights.items()})

    def same_topology(self, other: WeightedGraph) -> bool:
        return self.n == other.n and set(self.weights) == set(other.weights)

    def to_text(self) -> str:
        lines = [f"graph {self.n}"]
        lines += [f"{u} {v} {_decimal_or_fraction(w)}" for (u, v), w in self.weights.items()]
        return "\n".join(lines) + "\n"


def _decimal_or_fraction(w: Fraction) -> str:
    if w.denominator == 1:
        return str(w.numerator)
    d = w.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return str(w)
    places = max(twos, fives)
    digits = str(w.numerator * 10**places // w.denominator).rjust(places + 1, "0")
    sign = "-" if digits.startswith("-") else ""
    digits = digits.lstrip("-")
    return f"{sign}{digits[:-places]}.{digits[-places:]}".rstrip("0").rstrip(".")


def _connected(n: int, edges: Iterable[Edge]) -> bool:
    adj: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {1}
    queue = deque([1])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return len(seen) == n


def parse_graph(text: str) -> WeightedGraph:
    """Parse the ``graph <n>`` / ``<u> <v> <w>`` text format.

    Lines starting with ``#`` and blank lines are ignored.  Weights are read
    as exact decimal rationals.
    """
    n = None
    weights: Weighting = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "graph":
                raise GraphFormatError("expected header 'graph <n>'", lineno)
            try:
                n = int(parts[1])
            except ValueError:
                raise GraphFormatError(f"bad vertex count {parts[1]!r}", lineno) from None
            if n < 1:
                raise GraphFormatError(f"vertex count must be positive, got {n}", lineno)
            continue
        if len(parts) != 3:
            raise GraphFormatError("expected '<u> <v> <w>'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError("vertex labels must be integers", lineno) from None
        try:
            w = Fraction(parts[2])
        except ValueError:
            raise GraphFormatError(f"bad weight literal {parts[2]!r}", lineno) from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError(f"vertex out of range 1..{n} in edge {u}-{v}", lineno)
        if u == v:
            raise GraphFormatError(f"loop at vertex {u}", lineno)
        if w < 0:
            raise GraphFormatError(f"negative weight {parts[2]}", lineno)
        key = edge_key(u, v)
        if key in weights:
            raise GraphFormatError(f"duplicate edge {key[0]}-{key[1]}", lineno)
        weights[key] = w
    if n is None:
        raise GraphFormatError("missing 'graph <n>' header")
    if not _connected(n, weights):
        raise GraphFormatError("graph is disconnected")
    return WeightedGraph(n, weights)


def contract_edge(g: WeightedGraph, e: Edge) -> WeightedGraph:
    """Contract ``e``; the merged vertex keeps the smaller label and labels
    above the larger endpoint shift down by one.  Parallel edges created by
    the merge keep the minimum weight."""
    a, b = edge_key(*e)
    if (a, b) not in g.weights:
        raise GraphError(f"edge {a}-{b} is not in the graph")

    def relabel(x: int) -> int:
        if x == b:
            return a
        return x - 1 if x > b else x

    weights: Weighting = {}
    for (u, v), w in g.weights.items():
        if (u, v) == (a, b):
            continue
        key = edge_key(relabel(u), relabel(v))
        weights[key] = min(w, weights.get(key, w))
    return WeightedGraph(g.n - 1, weights)


def delete_edge(g: WeightedGraph, e: Edge) -> WeightedGraph:
    key = edge_key(*e)
    if key not in g.weights:
        raise GraphError(f"edge {key[0]}-{key[1]} is not in the graph")
    weights = {f: w for f, w in g.weights.items() if f != key}
    if not _connected(g.n, weights):
        raise GraphError(f"deleting edge {key[0]}-{key[1]} disconnects the graph")
    return WeightedGraph(g.n, weights)


def heavy_weight(g: WeightedGraph) -> Fraction:
    """``(n - 1) * max weight``: an added edge at least this heavy never
    shortens any distance."""
    return (g.n - 1) * g.max_weight()


@dataclass(frozen=True)
class EdgeOpPlan:
    """Edges of a host graph to contract and to delete, plus the scale applied
    to the weights of the resulting minor."""

    contract: frozenset = frozenset()
    delete: frozenset = frozenset()
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "contract", frozenset(edge_key(*e) for e in self.contract))
        object.__setattr__(self, "delete", frozenset(edge_key(*e) for e in self.delete))
        object.__setattr__(self, "scale", as_fraction(self.scale))
        if self.contract & self.delete:
            raise GraphError("an edge cannot be both contracted and deleted")
        if self.scale < 0:
            raise GraphError(f"scale must be nonnegative, got {self.scale}")


def plan_vertex_map(h: WeightedGraph, plan: EdgeOpPlan) -> dict[int, int]:
    """Host vertex -> minor vertex.

    Parts (components of the contracted edges) are numbered by their smallest
    host vertex, which is the labelling repeated :func:`contract_edge` calls
    produce regardless of order.
    """
    for e in plan.contract | plan.delete:
        if e not in h.weights:
            raise GraphError(f"plan edge {e[0]}-{e[1]} is not in the host graph")
    parent = list(range(h.n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in plan.contract:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    roots = sorted({find(v) for v in range(1, h.n + 1)})
    rank = {r: i + 1 for i, r in enumerate(roots)}
    return {v: rank[find(v)] for v in range(1, h.n + 1)}


def apply_plan(h: WeightedGraph, plan: EdgeOpPlan) -> WeightedGraph:
    """Delete then contract per ``plan``; weights of the result are the
    (minimum over parallel) host weights, not scaled."""
    vmap = plan_vertex_map(h, plan)
    kept = {e: w for e, w in h.weights.items() if e not in plan.delete}
    if not _connected(h.n, kept):
        raise GraphError("plan deletions disconnect the host graph")
    weights: Weighting = {}
    for (u, v), w in kept.items():
        a, b = vmap[u], vmap[v]
        if a == b:
            continue
        key = edge_key(a, b)
        weights[key] = min(w, weights.get(key, w))
    return WeightedGraph(max(vmap.values()), weights)


def minor_weighting(h: WeightedGraph, plan: EdgeOpPlan, minor: WeightedGraph) -> WeightedGraph:
    """Weight the host ``h`` so that its distance spectrum is the scaled
    spectrum of ``minor`` padded with zeros.

    Contracted edges (and any kept edge swallowed inside a contracted part)
    get 0, kept edges get ``scale`` times the weight of their image in
    ``minor``, and deleted edges get ``heavy_weight(scaled minor) + 1``.
    """
    topo = apply_plan(h, plan)
    if not topo.same_topology(minor):
        raise GraphError("plan applied to host does not produce the minor's topology")
    vmap = plan_vertex_map(h, plan)
    scaled = minor.scaled(plan.scale)
    big = heavy_weight(scaled) + 1
    psi: Weighting = {}
    for e in h.weights:
        if e in plan.delete:
            psi[e] = big
            continue
        a, b = vmap[e[0]], vmap[e[1]]
        psi[e] = Fraction(0) if a == b else scaled.weights[edge_key(a, b)]
    return h.reweighted(psi)


def complete_multipartite(parts: Iterable[int], weight=1) -> WeightedGraph:
    """Complete multipartite graph; parts are labelled consecutively in the
    order given, so ``[3, 2]`` puts the 3-side on vertices 1..3."""
    parts = list(parts)
    if not parts or any(p < 1 for p in parts):
        raise GraphError(f"invalid part sizes {parts}")
    label = []
    for idx, size in enumerate(parts):
        label += [idx] * size
    n = len(label)
    edges = [(i + 1, j + 1) for i in range(n) for j in range(i + 1, n) if label[i] != label[j]]
    return WeightedGraph.from_edges(n, edges, weight)

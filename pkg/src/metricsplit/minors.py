"""Graph minors and distance minors.

K_{2,3} is searched for as a subdivision: two branch vertices joined by
three internally disjoint paths, each with an interior vertex.  General
patterns go through a brute-force search over connected vertex partitions.
Distance minors of ``c * D_{K_{2,3}}`` are decided by exact LP feasibility
over the split decomposition.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import networkx as nx
import numpy as np

from metricsplit.graph import EdgeOpPlan, WeightedGraph, complete_multipartite, edge_key
from metricsplit.metric import DistanceMatrix, integer_matrix
from metricsplit.simplex import find_feasible
from metricsplit.splits import SplitDecomposition, cut_metric, decompose

DEFAULT_MINOR_CAP = 12

# 3-side on 1..3, 2-side on 4..5: the displayed K_{2,3} distance matrix
K23 = complete_multipartite([3, 2])
K23_PATTERN = (
    (0, 2, 2, 1, 1),
    (2, 0, 2, 1, 1),
    (2, 2, 0, 1, 1),
    (1, 1, 1, 0, 2),
    (1, 1, 1, 2, 0),
)


class MinorCapError(ValueError):
    pass


@dataclass(frozen=True)
class MinorCertificate:
    """Pattern vertex -> host branch vertex, and for every pattern edge the
    host path (vertex sequence) realising it."""

    branch: dict[int, int]
    paths: dict[tuple[int, int], list[int]]

    def as_dict(self) -> dict:
        return {
            "branch": {str(k): v for k, v in self.branch.items()},
            "paths": [{"edge": list(e), "path": p} for e, p in self.paths.items()],
        }


def _disjoint_paths(adj: dict[int, list[int]], s: int, t: int, limit: int) -> list[list[int]]:
    """Up to ``limit`` internally vertex-disjoint s-t paths, ignoring a direct
    s-t edge.  Unit-capacity max flow on the vertex-split graph."""
    cap: dict[tuple[int, int], int] = defaultdict(int)
    nbrs: dict[int, set[int]] = defaultdict(set)

    def arc(u: int, v: int, c: int) -> None:
        cap[(u, v)] += c
        nbrs[u].add(v)
        nbrs[v].add(u)

    # vertex v becomes 2v (in) -> 2v+1 (out)
    for v in adj:
        arc(2 * v, 2 * v + 1, limit if v in (s, t) else 1)
    for u in adj:
        for v in adj[u]:
            if {u, v} != {s, t}:
                arc(2 * u + 1, 2 * v, 1)
    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while flow < limit:
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            u = queue.popleft()
            for v in sorted(nbrs[u]):
                if v not in parent and cap[(u, v)] > 0:
                    parent[v] = u
                    queue.append(v)
        if sink not in parent:
            break
        v = sink
        while parent[v] is not None:
            u = parent[v]
            cap[(u, v)] -= 1
            cap[(v, u)] += 1
            v = u
        flow += 1

    paths = []
    used = set()
    for _ in range(flow):
        path = [s]
        u = s
        while u != t:
            nxt = next(
                w
                for w in sorted(adj[u])
                if {u, w} != {s, t} and (u, w) not in used and cap[(2 * u + 1, 2 * w)] == 0
            )
            used.add((u, nxt))
            path.append(nxt)
            u = nxt
        paths.append(path)
    return paths


def has_k23_subdivision(g: WeightedGraph) -> MinorCertificate | None:
    """Certificate of a K_{2,3} subdivision in ``g`` (equivalently a K_{2,3}
    minor, as K_{2,3} has maximum degree 3), or ``None``.

    Pattern vertices 1..3 are the 3-side, 4..5 the 2-side.
    """
    adj = g.adjacency()
    hubs = sorted((v for v in adj if len(adj[v]) >= 3), key=lambda v: (-len(adj[v]), v))
    for y1, y2 in combinations(hubs, 2):
        paths = _disjoint_paths(adj, y1, y2, 3)
        if len(paths) < 3:
            continue
        ys = sorted((y1, y2))
        # interior vertex next to y1 becomes the 3-side branch vertex
        legs = sorted(((p[1], p) for p in paths), key=lambda t: t[0])
        branch = {i + 1: x for i, (x, _) in enumerate(legs)}
        branch[4], branch[5] = ys
        cert_paths = {}
        for i, (x, p) in enumerate(legs):
            k = p.index(x)
            to_y1, to_y2 = p[k::-1], p[k:]
            if ys[0] != y1:
                to_y1, to_y2 = to_y2, to_y1
            cert_paths[(i + 1, 4)] = to_y1
            cert_paths[(i + 1, 5)] = to_y2
        return MinorCertificate(branch, cert_paths)
    return None


def _to_nx(n: int, edges) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(n))
    G.add_edges_from(edges)
    return G


def find_minor_model(g: WeightedGraph, pattern: WeightedGraph, cap: int | None = None) -> list[set[int]] | None:
    """Branch sets (host vertex sets, indexed by pattern vertex - 1) of a
    ``pattern`` minor in ``g``, or ``None``.

    Since ``g`` is connected, a minor model can always be grown into a
    partition of all of V(g) into connected parts, so it suffices to search
    partitions reached by edge contractions down to ``|V(pattern)|`` parts and
    test whether the pattern is a spanning subgraph of the quotient.
    """
    cap = DEFAULT_MINOR_CAP if cap is None else cap
    if g.n > cap:
        raise MinorCapError(f"{g.n} vertices exceeds the minor search cap of {cap}")
    h = pattern.n
    if g.n < h or g.m < pattern.m:
        return None
    nbr = [0] * g.n
    for u, v in g.weights:
        nbr[u - 1] |= 1 << (v - 1)
        nbr[v - 1] |= 1 << (u - 1)
    pat = _to_nx(h, [(u - 1, v - 1) for u, v in pattern.weights])
    pat_degrees = sorted((d for _, d in pat.degree()), reverse=True)

    def members(mask: int) -> set[int]:
        return {i + 1 for i in range(g.n) if mask >> i & 1}

    def model_from(parts, quotient_edges):
        Q = _to_nx(len(parts), quotient_edges)
        degs = sorted((d for _, d in Q.degree()), reverse=True)
        if any(a < b for a, b in zip(degs, pat_degrees)):
            return None
        matcher = nx.algorithms.isomorphism.GraphMatcher(Q, pat)
        for mapping in matcher.subgraph_monomorphisms_iter():
            model = [set() for _ in range(h)]
            for qi, pi in mapping.items():
                model[pi] = members(parts[qi])
            return model
        return None

    # host already contains the pattern as a subgraph
    host = _to_nx(g.n, [(u - 1, v - 1) for u, v in g.weights])
    for mapping in nx.algorithms.isomorphism.GraphMatcher(host, pat).subgraph_monomorphisms_iter():
        model = [set() for _ in range(h)]
        for hi, pi in mapping.items():
            model[pi] = {hi + 1}
        return model

    seen: set[tuple[int, ...]] = set()

    def search(parts: tuple[int, ...]):
        if parts in seen:
            return None
        seen.add(parts)
        k = len(parts)
        reach = []
        for mask in parts:
            r = 0
            for i in range(g.n):
                if mask >> i & 1:
                    r |= nbr[i]
            reach.append(r)
        qedges = [(i, j) for i in range(k) for j in range(i + 1, k) if reach[i] & parts[j]]
        if len(qedges) < pattern.m:
            return None
        if k == h:
            return model_from(parts, qedges)
        for i, j in qedges:
            merged = tuple(sorted([p for t, p in enumerate(parts) if t not in (i, j)] + [parts[i] | parts[j]]))
            found = search(merged)
            if found is not None:
                return found
        return None

    return search(tuple(1 << i for i in range(g.n)))


def has_minor(g: WeightedGraph, pattern: WeightedGraph, cap: int | None = None) -> bool:
    return find_minor_model(g, pattern, cap) is not None


@dataclass(frozen=True)
class DistanceMinorWitness:
    """Points (1-based, 3-side then 2-side) on which the recombination
    ``lambda0 * M0 + sum(lambda_S * cut(S))`` equals ``c * D_{K_{2,3}}``."""

    indices: tuple[int, ...]
    c: Fraction
    lambda0: Fraction
    lambdas: dict[tuple[int, ...], Fraction] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "indices": list(self.indices),
            "c": str(self.c),
            "lambda0": str(self.lambda0),
            "lambdas": [{"S": list(S), "lambda": str(v)} for S, v in self.lambdas.items()],
        }


def _pair_list(idx: tuple[int, ...]) -> list[tuple[int, int]]:
    return list(combinations(idx, 2))


def _pattern_orderings(n: int):
    """(3-side + 2-side) orderings of every 5-subset of range(n), one per
    coset of the pattern's automorphism group."""
    for five in combinations(range(n), 5):
        for two in combinations(five, 2):
            three = tuple(x for x in five if x not in two)
            yield three + two


def k23_distance_minor_test(
    m: DistanceMatrix, cap: int | None = None, decomposition: SplitDecomposition | None = None
) -> DistanceMinorWitness | None:
    """Is some positive multiple of the K_{2,3} metric a distance minor of
    ``m``?  Returns the first witness found, or ``None``.

    First every ordering is tried with the trivial recombination
    (``lambda0 = 1``, ``lambda_S = alpha_S``, i.e. ``m`` itself); then each
    ordering is an exact LP feasibility problem with ``c`` fixed to 1.
    """
    if m.n < 5:
        return None
    dec = decompose(m, cap) if decomposition is None else decomposition
    arr, _ = m.integer()
    pattern = np.array(K23_PATTERN, dtype=np.int64)
    orderings = list(_pattern_orderings(m.n))

    for order in orderings:
        sub = arr[np.ix_(order, order)]
        c = sub[0, 3]
        if c > 0 and np.array_equal(sub, c * pattern):
            return DistanceMinorWitness(
                tuple(i + 1 for i in order),
                m.d[order[0]][order[3]],
                Fraction(1),
                {s.S: s.alpha for s in dec.splits},
            )

    res, _ = integer_matrix(dec.residue)
    cuts = [(s.S, cut_metric(m.n, s.S)) for s in dec.splits]
    for five in combinations(range(m.n), 5):
        pairs = _pair_list(five)
        r0 = [int(res[i, j]) for i, j in pairs]
        if not any(r0):
            # a combination of cut metrics alone is l1 and cannot give K_{2,3}
            continue
        columns: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
        for S, cut in cuts:
            vec = tuple(int(cut[i][j]) for i, j in pairs)
            if any(vec):
                columns.setdefault(vec, []).append(S)
        col_keys = list(columns)
        for two in combinations(five, 2):
            three = tuple(x for x in five if x not in two)
            order = three + two
            pos = {v: k for k, v in enumerate(order)}
            b = [K23_PATTERN[pos[i]][pos[j]] for i, j in pairs]
            A = [[r0[row]] + [vec[row] for vec in col_keys] for row in range(len(pairs))]
            x = find_feasible(A, b)
            if x is None:
                continue
            lambdas = {S: Fraction(0) for S, _ in cuts}
            for vec, val in zip(col_keys, x[1:]):
                lambdas[columns[vec][0]] = val
            return DistanceMinorWitness(tuple(i + 1 for i in order), Fraction(1), x[0], lambdas)
    return None


@dataclass(frozen=True)
class AdversarialWeighting:
    graph: WeightedGraph
    certificate: MinorCertificate
    indices: tuple[int, ...]  # host branch vertices, 3-side then 2-side
    expected_min_i_plus: int = 2

    def as_dict(self) -> dict:
        return {
            "weights": [{"edge": list(e), "weight": str(w)} for e, w in self.graph.weights.items()],
            "indices": list(self.indices),
            "certificate": self.certificate.as_dict(),
            "expected_min_i_plus": self.expected_min_i_plus,
        }


def adversarial_weighting_k23(g: WeightedGraph) -> AdversarialWeighting | None:
    """Weight ``g`` so that the K_{2,3} distance matrix appears as a principal
    submatrix on the branch vertices of a K_{2,3} subdivision.

    Each subdivision path gets total length 1 split evenly over its edges;
    every other edge gets ``max(2, (n - 1) * heaviest path edge)``.
    """
    cert = has_k23_subdivision(g)
    if cert is None:
        return None
    weights: dict[tuple[int, int], Fraction] = {}
    for path in cert.paths.values():
        w = Fraction(1, len(path) - 1)
        for u, v in zip(path, path[1:]):
            weights[edge_key(u, v)] = w
    heavy = max(Fraction(2), (g.n - 1) * max(weights.values()))
    for e in g.weights:
        weights.setdefault(e, heavy)
    indices = tuple(cert.branch[i] for i in range(1, 6))
    return AdversarialWeighting(g.reweighted(weights), cert, indices)


def minor_plan(g: WeightedGraph, pattern: WeightedGraph, model: list[set[int]]) -> EdgeOpPlan:
    """Contract/delete plan realising ``pattern`` from ``g`` given branch sets.

    Unused vertices are first absorbed into adjacent branch sets; each set is
    contracted along a BFS tree; one host edge is kept per pattern edge and
    every other edge between different sets is deleted.
    """
    owner = {v: i for i, part in enumerate(model) for v in part}
    adj = g.adjacency()
    frontier = deque(sorted(owner))
    while frontier:
        u = frontier.popleft()
        for v in sorted(adj[u]):
            if v not in owner:
                owner[v] = owner[u]
                frontier.append(v)
    contract = set()
    for i in range(len(model)):
        members = sorted(v for v, o in owner.items() if o == i)
        seen = {members[0]}
        queue = deque([members[0]])
        while queue:
            u = queue.popleft()
            for v in sorted(adj[u]):
                if owner[v] == i and v not in seen:
                    seen.add(v)
                    contract.add(edge_key(u, v))
                    queue.append(v)
    wanted = {edge_key(u - 1, v - 1) for u, v in pattern.weights}
    kept: set[tuple[int, int]] = set()
    delete = set()
    for u, v in g.weights:
        a, b = owner[u], owner[v]
        if a == b:
            continue
        key = edge_key(a, b)
        if key in wanted and key not in kept:
            kept.add(key)
        else:
            delete.add((u, v))
    return EdgeOpPlan(frozenset(contract), frozenset(delete))

"""Shared graphs and independent oracles."""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product

import pytest

from metricsplit.graph import WeightedGraph, complete_multipartite

SQRT3 = math.sqrt(3)
SQRT7 = math.sqrt(7)

# roots of det(D_P3 - x I) = -(x + 2)(x^2 - 2x - 2)
P3_SPECTRUM = (1 + SQRT3, 1 - SQRT3, -2.0)
# equitable quotient [[4, 2], [3, 2]] has roots 3 +- sqrt(7); the rest is -2
K23_SPECTRUM = (3 + SQRT7, 3 - SQRT7, -2.0, -2.0, -2.0)
# circulant with first row (0, 1, 2, 1): 0+1+2+1, 0-1+2-1, 0-2 twice
C4_SPECTRUM = (4.0, 0.0, -2.0, -2.0)

K23_MATRIX = (
    (0, 2, 2, 1, 1),
    (2, 0, 2, 1, 1),
    (2, 2, 0, 1, 1),
    (1, 1, 1, 0, 2),
    (1, 1, 1, 2, 0),
)


def path(n: int, weights=None) -> WeightedGraph:
    edges = [(i, i + 1) for i in range(1, n)]
    if weights is not None:
        edges = [(u, v, w) for (u, v), w in zip(edges, weights)]
    return WeightedGraph.from_edges(n, edges)


def cycle(n: int) -> WeightedGraph:
    return WeightedGraph.from_edges(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def k23() -> WeightedGraph:
    return complete_multipartite([3, 2])


def k4() -> WeightedGraph:
    return complete_multipartite([1, 1, 1, 1])


def subdivide(g: WeightedGraph, edges=None) -> WeightedGraph:
    """Replace each listed edge (default all) by a two-edge path through a new vertex."""
    edges = list(g.weights) if edges is None else edges
    out, nxt = [], g.n + 1
    for e in g.weights:
        if e in edges:
            out += [(e[0], nxt), (nxt, e[1])]
            nxt += 1
        else:
            out.append(e)
    return WeightedGraph.from_edges(nxt - 1, out)


def brute_isolation_index(d, A, B) -> Fraction:
    """Textbook definition over all (a, a', b, b'), 1-based vertex sets."""
    best = None
    for a, a2, b, b2 in product(A, A, B, B):
        a, a2, b, b2 = a - 1, a2 - 1, b - 1, b2 - 1
        val = max(
            d[a][b] + d[a2][b2] - d[a2][a] - d[b2][b],
            d[a][b2] + d[a2][b] - d[a][a2] - d[b][b2],
            0,
        )
        best = val if best is None else min(best, val)
    return Fraction(best) / 2


@pytest.fixture
def p3() -> WeightedGraph:
    return path(3)


@pytest.fixture
def k23_graph() -> WeightedGraph:
    return k23()


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])

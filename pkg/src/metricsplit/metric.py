"""Distance matrices, semimetric validation and lp point metrics.

Exact work is done on integer matrices scaled by the common denominator of
the entries, which keeps Floyd-Warshall and the triangle check vectorised
while staying exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from metricsplit.graph import WeightedGraph, as_fraction

Matrix = tuple[tuple, ...]

# int64 headroom for sums of a few entries
_INT64_SAFE = 2**60


class MetricFormatError(ValueError):
    def __init__(self, message: str, report: SemimetricReport | None = None):
        super().__init__(message)
        self.report = report


def common_denominator(values) -> int:
    den = 1
    for v in values:
        if isinstance(v, Fraction):
            den = math.lcm(den, v.denominator)
    return den


def integer_matrix(rows: Sequence[Sequence[Fraction]]) -> tuple[np.ndarray, int]:
    """Scale an exact rational matrix to integers.

    Returns ``(array, den)`` with ``rows[i][j] == array[i, j] / den``.  The
    array is int64 when entries are small enough, else an object array of
    Python ints.
    """
    flat = [as_fraction(x) for row in rows for x in row]
    den = common_denominator(flat)
    ints = [x.numerator * (den // x.denominator) for x in flat]
    n = len(rows)
    big = max((abs(x) for x in ints), default=0)
    dtype = np.int64 if big < _INT64_SAFE // 4 else object
    arr = np.array(ints, dtype=dtype).reshape(n, len(rows[0]) if n else 0)
    return arr, den


def fraction_matrix(arr: np.ndarray, den: int) -> Matrix:
    return tuple(tuple(Fraction(int(x), den) for x in row) for row in arr)


@dataclass(frozen=True)
class SemimetricReport:
    hollow: bool
    symmetric: bool
    nonnegative: bool
    triangle: bool
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.hollow and self.symmetric and self.nonnegative and self.triangle

    def failed(self) -> list[str]:
        names = ("hollow", "symmetric", "nonnegative", "triangle")
        return [name for name in names if not getattr(self, name)]


def validate_semimetric(m, rtol: float = 1e-12) -> SemimetricReport:
    """Check hollowness, symmetry, nonnegativity and the triangle inequality.

    Exact matrices (Fractions/ints) are checked exactly; float matrices use a
    relative tolerance ``rtol`` on the triangle inequality only.
    """
    rows = _rows(m)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    exact = all(not isinstance(x, float) for r in rows for x in r)
    if exact:
        arr, _ = integer_matrix(rows)
        slack = 0
    else:
        arr = np.array(rows, dtype=float)
        slack = rtol * max(1.0, float(np.abs(arr).max(initial=0.0)))
    failures = []

    diag = [i for i in range(n) if arr[i, i] != 0]
    if diag:
        failures.append(f"hollow: d[{diag[0] + 1},{diag[0] + 1}] = {rows[diag[0]][diag[0]]} != 0")

    asym = np.argwhere(arr != arr.T)
    if len(asym):
        i, j = asym[0]
        failures.append(f"symmetric: d[{i + 1},{j + 1}] = {rows[i][j]} != d[{j + 1},{i + 1}] = {rows[j][i]}")

    neg = np.argwhere(arr < 0)
    if len(neg):
        i, j = neg[0]
        failures.append(f"nonnegative: d[{i + 1},{j + 1}] = {rows[i][j]} < 0")

    triangle_ok = True
    for k in range(n):
        # viol[i, j]: d[i, j] > d[i, k] + d[k, j]
        viol = arr > arr[:, k : k + 1] + arr[k : k + 1, :] + slack
        if viol.any():
            i, j = np.argwhere(viol)[0]
            failures.append(
                f"triangle: d[{i + 1},{j + 1}] = {rows[i][j]} > "
                f"d[{i + 1},{k + 1}] + d[{k + 1},{j + 1}] = {rows[i][k]} + {rows[k][j]}"
            )
            triangle_ok = False
            break
    return SemimetricReport(
        hollow=not diag,
        symmetric=not len(asym),
        nonnegative=not len(neg),
        triangle=triangle_ok,
        failures=failures,
    )


def _rows(m) -> list[list]:
    if isinstance(m, DistanceMatrix):
        return [list(r) for r in m.d]
    if isinstance(m, np.ndarray):
        return m.tolist()
    return [list(r) for r in m]


@dataclass(frozen=True)
class DistanceMatrix:
    """Hollow, symmetric, nonnegative matrix obeying the triangle inequality.

    Entries are Fractions when computed exactly, floats for lp metrics with
    ``p`` other than 1 or infinity.  Indices in the public API are 1-based
    where they name vertices; ``d[i][j]`` itself is plain 0-based storage.
    """

    d: Matrix

    def __post_init__(self):
        rows = tuple(tuple(x if isinstance(x, float) else as_fraction(x) for x in r) for r in self.d)
        object.__setattr__(self, "d", rows)
        report = validate_semimetric(rows)
        if not report.ok:
            raise MetricFormatError("not a semimetric: " + "; ".join(report.failures), report)

    @property
    def n(self) -> int:
        return len(self.d)

    @property
    def exact(self) -> bool:
        return all(not isinstance(x, float) for r in self.d for x in r)

    def __getitem__(self, ij):
        i, j = ij
        return self.d[i][j]

    def array(self) -> np.ndarray:
        return np.array([[float(x) for x in r] for r in self.d], dtype=float).reshape(self.n, self.n)

    def integer(self) -> tuple[np.ndarray, int]:
        if not self.exact:
            raise ValueError("float distance matrix has no exact integer form")
        return integer_matrix(self.d)

    def to_text(self) -> str:
        lines = [f"metric {self.n}"]
        lines += [" ".join(str(x) for x in r) for r in self.d]
        return "\n".join(lines) + "\n"


def floyd_warshall_int(n: int, edges: Sequence[tuple[int, int, int]]) -> np.ndarray:
    """Shortest paths on ``n`` vertices from 1-based ``(u, v, w)`` with
    integer weights; the graph must be connected."""
    inf = sum(w for _, _, w in edges) + 1
    dtype = np.int64 if 2 * inf < _INT64_SAFE else object
    dist = np.full((n, n), inf, dtype=dtype)
    np.fill_diagonal(dist, 0)
    for u, v, w in edges:
        dist[u - 1, v - 1] = dist[v - 1, u - 1] = w
    for k in range(n):
        dist = np.minimum(dist, dist[:, k : k + 1] + dist[k : k + 1, :])
    return dist


def integer_distances(g: WeightedGraph) -> tuple[np.ndarray, int]:
    """All-pairs shortest paths as ``(int matrix, den)``; exact."""
    den = common_denominator(g.weights.values())
    edges = [(u, v, x.numerator * (den // x.denominator)) for (u, v), x in g.weights.items()]
    return floyd_warshall_int(g.n, edges), den


def distance_matrix(g: WeightedGraph) -> DistanceMatrix:
    """Shortest-path distance matrix of ``g`` via Floyd-Warshall, exact."""
    dist, den = integer_distances(g)
    return DistanceMatrix(fraction_matrix(dist, den))


def principal_submatrix(m: DistanceMatrix, idx: Sequence[int]) -> DistanceMatrix:
    """Restrict to the 1-based indices ``idx``, in the given order."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        raise ValueError(f"repeated index in {idx}")
    for i in idx:
        if not 1 <= i <= m.n:
            raise ValueError(f"index {i} out of range 1..{m.n}")
    return DistanceMatrix(tuple(tuple(m.d[i - 1][j - 1] for j in idx) for i in idx))


def parse_metric(text: str) -> DistanceMatrix:
    """Read ``metric <n>`` followed by ``n`` rows of decimal literals."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise MetricFormatError("empty metric file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "metric":
        raise MetricFormatError("expected header 'metric <n>'")
    try:
        n = int(head[1])
    except ValueError:
        raise MetricFormatError(f"bad size {head[1]!r}") from None
    body = lines[1:]
    if len(body) != n:
        raise MetricFormatError(f"expected {n} rows, found {len(body)}")
    rows = []
    for i, line in enumerate(body, start=1):
        parts = line.split()
        if len(parts) != n:
            raise MetricFormatError(f"row {i}: expected {n} entries, found {len(parts)}")
        try:
            rows.append([Fraction(x) for x in parts])
        except ValueError:
            raise MetricFormatError(f"row {i}: bad decimal literal") from None
    report = validate_semimetric(rows)
    if not report.ok:
        raise MetricFormatError(
            "failed invariant(s): " + "; ".join(report.failures),
            report,
        )
    return DistanceMatrix(tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class PointSet:
    """``len(points)`` vectors of dimension ``k`` under the lp norm."""

    points: tuple[tuple, ...]
    p: float | Fraction = 1

    def __post_init__(self):
        pts = tuple(tuple(x if isinstance(x, float) else as_fraction(x) for x in pt) for pt in self.points)
        object.__setattr__(self, "points", pts)
        if len({len(pt) for pt in pts}) > 1:
            raise ValueError("points have differing dimensions")
        if not (self.p == math.inf or self.p >= 1):
            raise ValueError(f"p must be >= 1 or infinity, got {self.p}")

    @property
    def k(self) -> int:
        return len(self.points[0]) if self.points else 0


def lp_point_metric(ps: PointSet) -> DistanceMatrix:
    """Pairwise lp distances.  Exact for p in {1, inf} and whenever two points
    differ in at most one coordinate; float otherwise."""
    p = ps.p
    n = len(ps.points)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            diffs = [abs(a - b) for a, b in zip(ps.points[i], ps.points[j])]
            nonzero = [x for x in diffs if x != 0]
            if len(nonzero) <= 1:
                dist = nonzero[0] if nonzero else Fraction(0)
            elif p == 1:
                dist = sum(diffs)
            elif p == math.inf:
                dist = max(diffs)
            elif p == 2:
                dist = math.sqrt(sum(float(x) ** 2 for x in diffs))
            else:
                dist = sum(float(x) ** float(p) for x in diffs) ** (1.0 / float(p))
            rows[i][j] = rows[j][i] = dist
    if any(isinstance(x, float) for r in rows for x in r):
        rows = [[float(x) for x in r] for r in rows]
    return DistanceMatrix(tuple(tuple(r) for r in rows))

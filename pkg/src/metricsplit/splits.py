"""Cut metrics, isolation indices and split decomposition of finite metrics.

Everything here is exact.  Metrics are scaled to integer matrices by their
common denominator, so isolation indices come out as ``k / (2 * den)`` with
``k`` an integer and ``alpha > 0`` is a structural, not numerical, test.

Subsets are 1-based vertex sets.  A split is reported by its canonical side,
the one that does not contain the last point ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from metricsplit.graph import WeightedGraph
from metricsplit.metric import DistanceMatrix, Matrix, PointSet, distance_matrix

DEFAULT_SPLIT_CAP = 16


class SplitCapError(ValueError):
    pass


class DecompositionError(RuntimeError):
    """The residue of a decomposition came out negative or not split-prime."""


@dataclass(frozen=True)
class Split:
    S: tuple[int, ...]
    alpha: Fraction

    def as_dict(self) -> dict:
        return {"S": list(self.S), "alpha": str(self.alpha)}


@dataclass(frozen=True)
class SplitDecomposition:
    n: int
    splits: tuple[Split, ...]
    residue: Matrix

    @property
    def totally_decomposable(self) -> bool:
        return all(x == 0 for row in self.residue for x in row)

    def reconstruct(self) -> Matrix:
        rows = [list(r) for r in self.residue]
        for s in self.splits:
            cut = cut_metric(self.n, s.S)
            for i in range(self.n):
                for j in range(self.n):
                    rows[i][j] += s.alpha * cut[i][j]
        return tuple(tuple(r) for r in rows)

    def as_dict(self) -> dict:
        return {
            "splits": [s.as_dict() for s in self.splits],
            "residue": [[str(x) for x in row] for row in self.residue],
            "totally_decomposable": self.totally_decomposable,
        }


def cut_metric(n: int, S: Iterable[int]) -> Matrix:
    """0/1 matrix with a 1 exactly on pairs separated by ``S``."""
    inside = set(S)
    return tuple(
        tuple(Fraction(int(((i in inside) != (j in inside)))) for j in range(1, n + 1)) for i in range(1, n + 1)
    )


def _isolation_numerator(arr: np.ndarray, a: list[int], b: list[int]):
    """``2 * alpha`` in the integer units of ``arr`` (0-based index lists)."""
    dab = arr[np.ix_(a, b)]
    daa = arr[np.ix_(a, a)]
    dbb = arr[np.ix_(b, b)]
    # axes: a, a', b, b'
    inner = daa[:, :, None, None] + dbb[None, None, :, :]
    t1 = dab[:, None, :, None] + dab[None, :, None, :] - inner
    t2 = dab[:, None, None, :] + dab[None, :, :, None] - inner
    best = np.maximum(np.maximum(t1, t2), 0)
    return best.min()


def _subset(n: int, A: Iterable[int], name: str) -> list[int]:
    out = sorted(set(A))
    if not out:
        raise ValueError(f"{name} must be nonempty")
    if not all(1 <= x <= n for x in out):
        raise ValueError(f"{name} has points outside 1..{n}")
    return out


def isolation_index(m: DistanceMatrix, A: Iterable[int], B: Iterable[int] | None = None) -> Fraction:
    """Isolation index of ``(A, B)``; ``B`` defaults to the complement of ``A``.

    Half the minimum, over ``a, a'`` in ``A`` and ``b, b'`` in ``B``, of
    ``max(d(a,b) + d(a',b') - d(a,a') - d(b,b'), d(a,b') + d(a',b) - d(a,a') - d(b,b'), 0)``.
    """
    A = _subset(m.n, A, "A")
    if B is None:
        B = [x for x in range(1, m.n + 1) if x not in A]
    B = _subset(m.n, B, "B")
    if set(A) & set(B):
        raise ValueError("A and B must be disjoint")
    arr, den = m.integer()
    num = _isolation_numerator(arr, [x - 1 for x in A], [x - 1 for x in B])
    return Fraction(int(num), 2 * den)


def _check_cap(n: int, cap: int | None) -> None:
    cap = DEFAULT_SPLIT_CAP if cap is None else cap
    if n > cap:
        raise SplitCapError(f"{n} points exceeds the split enumeration cap of {cap}")


def _mask_members(mask: int, n: int) -> list[int]:
    return [i for i in range(n) if mask >> i & 1]


def splits_of_array(arr: np.ndarray, n: int) -> list[tuple[int, object]]:
    """(mask, 2*alpha numerator) for every canonical subset with alpha > 0."""
    out = []
    everything = (1 << n) - 1
    for mask in range(1, 1 << (n - 1)):
        a = _mask_members(mask, n)
        b = _mask_members(everything ^ mask, n)
        num = _isolation_numerator(arr, a, b)
        if num > 0:
            out.append((mask, num))
    return out


def enumerate_splits(m: DistanceMatrix, cap: int | None = None) -> list[Split]:
    """All splits in binary-ascending order of their canonical side
    (vertex ``i`` is bit ``i - 1``)."""
    _check_cap(m.n, cap)
    if m.n < 2:
        return []
    arr, den = m.integer()
    return [
        Split(tuple(i + 1 for i in _mask_members(mask, m.n)), Fraction(int(num), 2 * den))
        for mask, num in splits_of_array(arr, m.n)
    ]


def decompose(m: DistanceMatrix, cap: int | None = None) -> SplitDecomposition:
    """``m = residue + sum(alpha_S * cut(S))`` over the splits of ``m``.

    All splits of the original metric are subtracted in one pass.  The
    residue must come out nonnegative and split-prime; anything else is
    raised as :class:`DecompositionError`.
    """
    _check_cap(m.n, cap)
    n = m.n
    if n < 2:
        return SplitDecomposition(n, (), m.d)
    arr, den = m.integer()
    found = splits_of_array(arr, n)
    # work in units of 1 / (2 * den) so every alpha is an integer
    residue = 2 * arr
    for mask, num in found:
        inside = np.array([mask >> i & 1 for i in range(n)], dtype=bool)
        cut = inside[:, None] != inside[None, :]
        residue = residue - cut * num
    if (residue < 0).any():
        i, j = np.argwhere(residue < 0)[0]
        raise DecompositionError(f"residue entry ({i + 1},{j + 1}) is negative")
    leftover = splits_of_array(residue, n)
    if leftover:
        members = [i + 1 for i in _mask_members(leftover[0][0], n)]
        raise DecompositionError(f"residue is not split-prime: {members} has positive isolation index")
    splits = tuple(Split(tuple(i + 1 for i in _mask_members(mask, n)), Fraction(int(num), 2 * den)) for mask, num in found)
    res = tuple(tuple(Fraction(int(x), 2 * den) for x in row) for row in residue)
    return SplitDecomposition(n, splits, res)


def is_totally_decomposable(m: DistanceMatrix, cap: int | None = None) -> bool:
    return decompose(m, cap).totally_decomposable


class NotDecomposableError(ValueError):
    pass


def l1_embed(m: DistanceMatrix, cap: int | None = None) -> PointSet:
    """One coordinate per split: point ``i`` sits at ``alpha_S`` if ``i`` is in
    ``S`` and at 0 otherwise.  Requires a totally decomposable metric."""
    dec = decompose(m, cap)
    if not dec.totally_decomposable:
        raise NotDecomposableError("metric is not totally decomposable; no split-based l1 embedding")
    points = tuple(
        tuple(s.alpha if i in s.S else Fraction(0) for s in dec.splits) for i in range(1, m.n + 1)
    )
    return PointSet(points, p=1)


@dataclass(frozen=True)
class CutWeighting:
    graph: WeightedGraph
    S: tuple[int, ...]
    weights: dict

    def bridges(self) -> list:
        return [e for e, w in self.weights.items() if w == 1]


def cut_weighting(g: WeightedGraph, S: Iterable[int]) -> CutWeighting:
    """1 on every bridge (edge with exactly one endpoint in ``S``), else 0."""
    inside = set(S)
    if not inside <= set(range(1, g.n + 1)):
        raise ValueError(f"S has vertices outside 1..{g.n}")
    weights = {(u, v): Fraction(int((u in inside) != (v in inside))) for u, v in g.weights}
    return CutWeighting(g, tuple(sorted(inside)), weights)


def apply_cut_shift(g: WeightedGraph, S: Iterable[int], x) -> WeightedGraph:
    """Reweight ``g`` by ``phi + x * cut_weighting(S)``.

    ``S`` must be a split of the distance matrix of ``g`` and ``x`` at least
    minus its isolation index; the distance matrix then shifts by exactly
    ``x * cut_metric(S)``.
    """
    x = Fraction(x)
    S = sorted(set(S))
    if not S or len(S) == g.n:
        raise ValueError("S must be a proper nonempty subset")
    alpha = isolation_index(distance_matrix(g), S)
    if alpha <= 0:
        raise ValueError(f"{S} is not a split of the graph metric")
    if x < -alpha:
        raise ValueError(f"shift {x} is below -alpha = {-alpha}")
    delta = cut_weighting(g, S).weights
    new = {e: w + x * delta[e] for e, w in g.weights.items()}
    bad = [e for e, w in new.items() if w < 0]
    if bad:
        raise ValueError(f"shift makes edge {bad[0][0]}-{bad[0][1]} negative")
    return g.reweighted(new)


class NegativeResidueWeightError(ValueError):
    pass


def split_prime_residue_weighting(g: WeightedGraph, cap: int | None = None) -> WeightedGraph:
    """``phi - sum(alpha_S * cut_weighting(S))`` over the splits of ``D_phi``.

    The splits are those of the original metric, subtracted in canonical
    order without re-enumeration.  Raises if any edge weight goes negative.
    """
    splits = enumerate_splits(distance_matrix(g), cap)
    weights = dict(g.weights)
    for s in splits:
        inside = set(s.S)
        for e in weights:
            if (e[0] in inside) != (e[1] in inside):
                weights[e] -= s.alpha
                if weights[e] < 0:
                    raise NegativeResidueWeightError(
                        f"edge {e[0]}-{e[1]} goes negative ({weights[e]}) after subtracting split {list(s.S)}"
                    )
    return g.reweighted(weights)

"""Phase-1 simplex over exact rationals.

Only feasibility is needed: find ``x >= 0`` with ``A x = b``.  Bland's rule
(lowest-index entering column, lowest-index leaving basic variable on ties)
rules out cycling, and Fractions rule out tolerances.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def find_feasible(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """A nonnegative solution of ``A x = b``, or ``None`` if there is none."""
    m = len(A)
    n = len(A[0]) if m else 0
    if any(len(row) != n for row in A) or len(b) != m:
        raise ValueError("inconsistent LP dimensions")
    width = n + m
    T: list[list[Fraction]] = []
    for i in range(m):
        row = [Fraction(x) for x in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        T.append(row + [Fraction(int(k == i)) for k in range(m)] + [rhs])
    basis = [n + i for i in range(m)]
    # reduced costs of "minimise the sum of artificials"; last entry is -objective
    z = [-sum((T[i][j] for i in range(m)), Fraction(0)) for j in range(n)] + [Fraction(0)] * m
    z.append(-sum((T[i][-1] for i in range(m)), Fraction(0)))

    while True:
        entering = next((j for j in range(width) if z[j] < 0), None)
        if entering is None:
            break
        leaving = None
        best = None
        for i in range(m):
            a = T[i][entering]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best, leaving = ratio, i
        if leaving is None:
            # unbounded below cannot happen for a sum of nonnegative artificials
            raise RuntimeError("phase-1 objective unbounded")
        _pivot(T, z, leaving, entering)
        basis[leaving] = entering

    if z[-1] != 0:
        return None
    x = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = T[i][-1]
    return x


def _pivot(T: list[list[Fraction]], z: list[Fraction], r: int, c: int) -> None:
    piv = T[r][c]
    row = [x / piv for x in T[r]]
    T[r] = row
    for i, other in enumerate(T):
        if i != r and other[c] != 0:
            f = other[c]
            T[i] = [x - f * y for x, y in zip(other, row)]
    if z[c] != 0:
        f = z[c]
        z[:] = [x - f * y for x, y in zip(z, row)]

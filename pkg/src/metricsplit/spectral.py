"""Eigenvalues of symmetric matrices by cyclic Jacobi rotations, inertia,
and the Perron and interlacing checks used on distance matrices."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np
from numba import njit

from metricsplit.metric import DistanceMatrix

OFF_DIAGONAL_RTOL = 1e-12
ZERO_TOL_COEFF = 1e-9
MAX_SWEEPS = 100


@njit(cache=True)
def _jacobi_eigenvalues(a, rtol, max_sweeps):
    a = a.copy()
    n = a.shape[0]
    total = 0.0
    for i in range(n):
        for j in range(n):
            total += a[i, j] * a[i, j]
    norm = math.sqrt(total)
    for _ in range(max_sweeps):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j] * a[i, j]
        if math.sqrt(off) <= rtol * norm:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
    out = np.empty(n)
    for i in range(n):
        out[i] = a[i, i]
    return out


def as_float_array(m) -> np.ndarray:
    if isinstance(m, DistanceMatrix):
        return m.array()
    arr = np.array(m, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    return arr


def zero_tolerance(arr: np.ndarray) -> float:
    """Default zero-classification threshold ``1e-9 * max(1, max|a_ij|) * n``."""
    n = arr.shape[0]
    return ZERO_TOL_COEFF * max(1.0, float(np.abs(arr).max(initial=0.0))) * n


class Inertia(NamedTuple):
    i_plus: int
    i_zero: int
    i_minus: int


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[float, ...]  # descending
    tol: float

    @property
    def rho(self) -> float:
        return max((abs(x) for x in self.eigenvalues), default=0.0)

    def inertia(self) -> Inertia:
        plus = sum(1 for x in self.eigenvalues if x > self.tol)
        minus = sum(1 for x in self.eigenvalues if x < -self.tol)
        return Inertia(plus, len(self.eigenvalues) - plus - minus, minus)


def eigenvalues_symmetric(m, tol: float | None = None) -> Spectrum:
    """All eigenvalues of the symmetric matrix ``m``, sorted descending.

    Cyclic Jacobi sweeps run until the off-diagonal Frobenius norm drops
    below ``1e-12`` times the matrix norm.
    """
    arr = as_float_array(m)
    if arr.shape[0] == 0:
        return Spectrum((), 0.0 if tol is None else tol)
    vals = _jacobi_eigenvalues(np.ascontiguousarray(arr), OFF_DIAGONAL_RTOL, MAX_SWEEPS)
    vals = sorted((float(x) for x in vals), reverse=True)
    return Spectrum(tuple(vals), zero_tolerance(arr) if tol is None else tol)


def inertia(m, tol: float | None = None) -> Inertia:
    """(positive, zero, negative) eigenvalue counts; ``tol`` is absolute."""
    return eigenvalues_symmetric(m, tol).inertia()


def characteristic_polynomial(rows) -> list[Fraction]:
    """Coefficients of ``det(x I - A)``, leading first, by Faddeev-LeVerrier
    over exact rationals."""
    a = [[Fraction(x) for x in row] for row in rows]
    n = len(a)
    coeffs = [Fraction(1)]
    m = [[Fraction(0)] * n for _ in range(n)]
    c = Fraction(1)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I
        m = [[sum(a[i][t] * m[t][j] for t in range(n)) + (c if i == j else 0) for j in range(n)] for i in range(n)]
        am = [[sum(a[i][t] * m[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        c = -sum(am[i][i] for i in range(n)) / k
        coeffs.append(c)
    return coeffs


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(a != b for a, b in zip(signs, signs[1:]))


def exact_inertia(m) -> Inertia:
    """Inertia of a rational symmetric matrix without rounding.

    All roots of the characteristic polynomial are real, so Descartes' rule
    of signs counts the positive (and, on ``p(-x)``, negative) roots exactly.
    """
    if isinstance(m, DistanceMatrix):
        if not m.exact:
            raise ValueError("exact inertia needs rational entries")
        rows = m.d
    else:
        rows = m
    coeffs = characteristic_polynomial(rows)
    n = len(coeffs) - 1
    zeros = 0
    while zeros < n and coeffs[n - zeros] == 0:
        zeros += 1
    body = coeffs[: n + 1 - zeros]
    plus = _sign_changes(body)
    minus = _sign_changes([c if (len(body) - 1 - i) % 2 == 0 else -c for i, c in enumerate(body)])
    return Inertia(plus, zeros, minus)


@dataclass
class CheckReport:
    name: str
    checks: list[tuple[str, bool, str]] = field(default_factory=list)
    skipped: str | None = None
    # informational reports document claims known not to hold in general
    informational: bool = False

    def add(self, label: str, ok: bool, detail: str = "") -> None:
        self.checks.append((label, bool(ok), detail))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "skipped": self.skipped,
            "informational": self.informational,
            "checks": [{"check": c, "passed": ok, "detail": d} for c, ok, d in self.checks],
        }


def perron_check(m, tol: float | None = None) -> CheckReport:
    """Perron root of a nonzero distance matrix: dominant, simple, between
    the extreme row sums; and the eigenvalues sum to the (zero) trace."""
    arr = as_float_array(m)
    report = CheckReport("perron")
    if not np.any(arr):
        report.skipped = "zero matrix: Perron claims need a nonzero weighting"
        return report
    spec = eigenvalues_symmetric(arr, tol)
    lam = spec.eigenvalues
    n = len(lam)
    t = spec.tol
    rho = lam[0]
    rows = arr.sum(axis=1)
    lo, hi = float(rows.min()), float(rows.max())
    report.add("dominant", rho >= abs(lam[-1]) - t, f"rho={rho:.12g}, lambda_min={lam[-1]:.12g}")
    report.add("simple", n == 1 or lam[0] - lam[1] > t, f"gap={lam[0] - lam[1] if n > 1 else float('inf'):.3g}")
    report.add("row_sum_bounds", lo - t <= rho <= hi + t, f"{lo:.12g} <= {rho:.12g} <= {hi:.12g}")
    trace = float(np.trace(arr))
    report.add("eigenvalue_sum", abs(sum(lam) - trace) <= n * t, f"sum={sum(lam):.3g}, trace={trace:.3g}")
    return report


def interlacing_check(m, idx: Sequence[int], tol: float | None = None) -> CheckReport:
    """Cauchy interlacing between ``m`` and its principal submatrix on the
    1-based indices ``idx``: ``lam[i] >= mu[i] >= lam[i + n - k]``."""
    arr = as_float_array(m)
    n = arr.shape[0]
    idx = list(idx)
    if len(set(idx)) != len(idx) or not all(1 <= i <= n for i in idx):
        raise ValueError(f"invalid index subset {idx} for size {n}")
    zero_based = [i - 1 for i in idx]
    sub = arr[np.ix_(zero_based, zero_based)]
    full = eigenvalues_symmetric(arr, tol)
    part = eigenvalues_symmetric(sub, full.tol)
    t = full.tol
    lam, mu, k = full.eigenvalues, part.eigenvalues, len(idx)
    report = CheckReport("interlacing")
    bad = [i for i in range(k) if not (lam[i] + t >= mu[i] >= lam[i + n - k] - t)]
    report.add("interlaces", not bad, f"violations at positions {bad}" if bad else "")
    ip_full, ip_sub = full.inertia().i_plus, part.inertia().i_plus
    report.add("i_plus_monotone", ip_sub <= ip_full, f"i_plus(sub)={ip_sub}, i_plus(full)={ip_full}")
    return report

"""Property checks for a single weighted graph.

Each function recomputes a predicted identity and compares it with a direct
computation, returning a :class:`~metricsplit.spectral.CheckReport`.  The
``verify`` CLI subcommand runs :func:`verify_graph`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from metricsplit.graph import EdgeOpPlan, WeightedGraph, apply_plan, contract_edge, edge_key, heavy_weight, minor_weighting
from metricsplit.metric import DistanceMatrix, distance_matrix, integer_matrix, lp_point_metric
from metricsplit.minors import adversarial_weighting_k23
from metricsplit.spectral import CheckReport, eigenvalues_symmetric, inertia, perron_check
from metricsplit.splits import (
    DecompositionError,
    NegativeResidueWeightError,
    apply_cut_shift,
    cut_metric,
    decompose,
    enumerate_splits,
    l1_embed,
    split_prime_residue_weighting,
    splits_of_array,
)

BRIDGE_CHECK_MAX_N = 8


def spectra_match(a: Sequence[float], b: Sequence[float], tol: float) -> bool:
    return len(a) == len(b) and all(abs(x - y) <= tol for x, y in zip(sorted(a), sorted(b)))


def check_zero_edge_contraction(g: WeightedGraph) -> CheckReport:
    """Zeroing then contracting an edge keeps the inertia up to one extra
    zero eigenvalue.  (Contraction duplicates a row and column, a rank-
    preserving congruence, so this is Sylvester's law of inertia.)"""
    report = CheckReport("zero_edge_contraction")
    for e in g.edges:
        zeroed = g.reweighted({**g.weights, e: Fraction(0)})
        full = inertia(distance_matrix(zeroed))
        small = inertia(distance_matrix(contract_edge(zeroed, e)))
        ok = full == (small.i_plus, small.i_zero + 1, small.i_minus)
        report.add(f"edge {e[0]}-{e[1]}", ok, f"{tuple(full)} vs {tuple(small)}")
    return report


def check_zero_edge_spectrum(g: WeightedGraph) -> CheckReport:
    """The stronger claim that the whole spectrum survives contraction with
    one extra 0.  False in general (P3 weighted (0, 1) has eigenvalues
    +-sqrt(2), 0 against +-1 after contraction); reported, never required."""
    report = CheckReport("zero_edge_spectrum", informational=True)
    for e in g.edges:
        zeroed = g.reweighted({**g.weights, e: Fraction(0)})
        full = eigenvalues_symmetric(distance_matrix(zeroed))
        small = eigenvalues_symmetric(distance_matrix(contract_edge(zeroed, e)))
        ok = spectra_match(full.eigenvalues, small.eigenvalues + (0.0,), full.tol)
        report.add(f"edge {e[0]}-{e[1]}", ok)
    return report


def check_heavy_edge(g: WeightedGraph) -> CheckReport:
    """Adding any missing edge at the heavy weight leaves D unchanged (exact)."""
    report = CheckReport("heavy_edge")
    base = distance_matrix(g)
    heavy = heavy_weight(g)
    for u in range(1, g.n + 1):
        for v in range(u + 1, g.n + 1):
            if (u, v) in g.weights:
                continue
            bigger = WeightedGraph(g.n, {**g.weights, (u, v): heavy})
            report.add(f"add {u}-{v}", distance_matrix(bigger) == base)
    return report


def check_minor_weighting(h: WeightedGraph, plan: EdgeOpPlan, minor: WeightedGraph) -> CheckReport:
    """Inertia of the host under the minor-realising weighting equals that of
    the scaled minor, padded with zeros."""
    report = CheckReport("minor_weighting")
    psi = minor_weighting(h, plan, minor)
    host = inertia(distance_matrix(psi))
    small = inertia(distance_matrix(minor.scaled(plan.scale)))
    expected = (small.i_plus, small.i_zero + h.n - minor.n, small.i_minus)
    report.add("inertia", host == expected, f"{tuple(host)} vs {expected}")
    return report


def check_minor_weighting_spectrum(h: WeightedGraph, plan: EdgeOpPlan, minor: WeightedGraph) -> CheckReport:
    """The literal spectrum version: host spectrum equals ``scale`` times the
    minor spectrum plus zeros.  Holds for pure deletions and rescaling; fails
    in general once an edge is contracted."""
    report = CheckReport("minor_weighting_spectrum", informational=True)
    psi = minor_weighting(h, plan, minor)
    host = eigenvalues_symmetric(distance_matrix(psi))
    small = eigenvalues_symmetric(distance_matrix(minor))
    expected = tuple(float(plan.scale) * x for x in small.eigenvalues) + (0.0,) * (h.n - minor.n)
    report.add("spectrum", spectra_match(host.eigenvalues, expected, host.tol))
    return report


def _simple_paths(adj: dict[int, list[int]], u: int, v: int) -> Iterable[list[int]]:
    stack = [(u, [u])]
    while stack:
        x, path = stack.pop()
        if x == v:
            yield path
            continue
        for y in adj[x]:
            if y not in path:
                stack.append((y, path + [y]))


def bridge_profile(g: WeightedGraph, S: Iterable[int], u: int, v: int) -> dict[int, Fraction]:
    """Shortest simple u-v path length for each number of bridges crossed."""
    inside = set(S)
    best: dict[int, Fraction] = {}
    for path in _simple_paths(g.adjacency(), u, v):
        length = Fraction(0)
        crossings = 0
        for a, b in zip(path, path[1:]):
            length += g.weights[edge_key(a, b)]
            crossings += (a in inside) != (b in inside)
        if crossings not in best or length < best[crossings]:
            best[crossings] = length
    return best


def check_bridge_crossing(g: WeightedGraph, S: Iterable[int], alpha: Fraction) -> CheckReport:
    """Every two extra bridge crossings cost at least ``2 * alpha``: for each
    crossing count ``r >= 2`` seen on a simple path, some path with ``r - 2``
    crossings is at least ``2 * alpha`` shorter."""
    report = CheckReport("bridge_crossing")
    S = list(S)
    for u in range(1, g.n + 1):
        for v in range(u, g.n + 1):
            prof = bridge_profile(g, S, u, v)
            for r, length in prof.items():
                if r >= 2:
                    ok = r - 2 in prof and prof[r - 2] + 2 * alpha <= length
                    report.add(f"{u}-{v} r={r}", ok, f"{prof.get(r - 2)} vs {length}")
    return report


def check_cut_shift(g: WeightedGraph, S: Sequence[int], xs: Iterable[Fraction]) -> CheckReport:
    """Shifting by ``x`` times the cut weighting shifts D by ``x`` times the cut metric (exact)."""
    report = CheckReport("cut_shift")
    base = distance_matrix(g)
    cut = cut_metric(g.n, S)
    for x in xs:
        shifted = distance_matrix(apply_cut_shift(g, S, x))
        expected = tuple(tuple(base.d[i][j] + x * cut[i][j] for j in range(g.n)) for i in range(g.n))
        report.add(f"S={list(S)} x={x}", shifted.d == expected)
    return report


def check_decomposition(m: DistanceMatrix, cap: int | None = None) -> CheckReport:
    """Exact reconstruction, nonnegative and split-prime residue."""
    report = CheckReport("decomposition")
    try:
        dec = decompose(m, cap)
    except DecompositionError as exc:
        report.add("decompose", False, str(exc))
        return report
    report.add("reconstruction", dec.reconstruct() == m.d)
    report.add("residue_nonnegative", all(x >= 0 for row in dec.residue for x in row))
    res, _ = integer_matrix(dec.residue)
    report.add("residue_split_prime", not splits_of_array(res, m.n) if m.n > 1 else True)
    report.add("alpha_positive", all(s.alpha > 0 for s in dec.splits))
    return report


def check_l1_embedding(m: DistanceMatrix, cap: int | None = None) -> CheckReport:
    report = CheckReport("l1_embedding")
    ps = l1_embed(m, cap)
    if not ps.points or ps.k == 0:
        report.add("isometric", all(x == 0 for row in m.d for x in row))
        return report
    report.add("isometric", lp_point_metric(ps).d == m.d)
    return report


def check_residue_weighting(g: WeightedGraph, cap: int | None = None) -> CheckReport:
    """The split-prime residue weighting reproduces the decomposition residue."""
    report = CheckReport("residue_weighting")
    try:
        psi = split_prime_residue_weighting(g, cap)
    except NegativeResidueWeightError as exc:
        report.add("nonnegative", False, str(exc))
        return report
    report.add("nonnegative", True)
    dec = decompose(distance_matrix(g), cap)
    dpsi = distance_matrix(psi)
    report.add("matches_residue", dpsi.d == dec.residue)
    report.add("split_prime", not enumerate_splits(dpsi, cap))
    return report


def check_k23_dichotomy(g: WeightedGraph, cap: int | None = None) -> CheckReport:
    """With a K_{2,3} subdivision the adversarial weighting has i_plus >= 2;
    without one this weighting has i_plus <= 1, is totally decomposable and
    embeds isometrically in l1."""
    report = CheckReport("k23_dichotomy")
    adv = adversarial_weighting_k23(g)
    if adv is not None:
        report.add("adversarial_i_plus>=2", inertia(distance_matrix(adv.graph)).i_plus >= 2)
        return report
    m = distance_matrix(g)
    report.add("i_plus<=1", inertia(m).i_plus <= 1)
    report.add("totally_decomposable", decompose(m, cap).totally_decomposable)
    report.add("l1_isometric", check_l1_embedding(m, cap).passed)
    return report


def verify_graph(g: WeightedGraph, cap: int | None = None) -> list[CheckReport]:
    """Run every applicable property check on ``g``."""
    reports = [
        check_zero_edge_contraction(g),
        check_zero_edge_spectrum(g),
        check_heavy_edge(g),
        check_minor_weighting(g, EdgeOpPlan(scale=2), g),
        check_minor_weighting_spectrum(g, EdgeOpPlan(scale=2), g),
        perron_check(distance_matrix(g)),
    ]
    if g.m:
        e = g.edges[0]
        plan = EdgeOpPlan(contract=frozenset({e}))
        minor = apply_plan(g, plan)
        reports.append(check_minor_weighting(g, plan, minor))
        reports.append(check_minor_weighting_spectrum(g, plan, minor))
    m = distance_matrix(g)
    reports.append(check_decomposition(m, cap))
    splits = enumerate_splits(m, cap)
    for s in splits:
        reports.append(check_cut_shift(g, s.S, [-s.alpha, -s.alpha / 2, Fraction(0), Fraction(1), Fraction(17, 3)]))
        if g.n <= BRIDGE_CHECK_MAX_N:
            reports.append(check_bridge_crossing(g, s.S, s.alpha))
    reports.append(check_residue_weighting(g, cap))
    reports.append(check_k23_dichotomy(g, cap))
    return reports

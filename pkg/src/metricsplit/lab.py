"""Graph families, seeded random weightings and the conjecture experiments.

Randomness is counter based: sample ``i`` of a run keyed by ``seed`` draws
from a Philox stream keyed by ``(seed, i)``, so every sample is a pure
function of its parameters and can be regenerated on its own.
"""

from __future__ import annotations

import hashlib
import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from metricsplit.graph import WeightedGraph, apply_plan, complete_multipartite, minor_weighting
from metricsplit.metric import PointSet, distance_matrix, floyd_warshall_int, lp_point_metric
from metricsplit.minors import find_minor_model, minor_plan
from metricsplit.spectral import eigenvalues_symmetric, exact_inertia, inertia

FAMILIES = ("path", "cycle", "star", "complete", "k4", "tree-random", "connected-random", "multipartite")
LAWS = ("uniform", "grid", "exp")
DYADIC_BITS = 20


def sample_rng(seed: int, index: int = 0) -> np.random.Generator:
    key = (int(seed) % 2**64) | (int(index) % 2**64) << 64
    return np.random.Generator(np.random.Philox(key=key))


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int = 0
    parts: tuple[int, ...] = ()
    p_edge: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        if self.family == "multipartite":
            if not self.parts or any(p < 1 for p in self.parts):
                raise ValueError(f"multipartite needs positive part sizes, got {self.parts}")
        elif self.family == "k4":
            pass
        elif self.n < 1:
            raise ValueError(f"{self.family} needs n >= 1")
        elif self.family == "cycle" and self.n < 3:
            raise ValueError("cycle needs n >= 3")
        if self.p_edge is not None and not 0 < self.p_edge <= 1:
            raise ValueError(f"edge probability must be in (0, 1], got {self.p_edge}")


def random_tree(n: int, rng: np.random.Generator) -> WeightedGraph:
    """Uniform labelled tree via a random Pruefer sequence."""
    if n <= 2:
        return WeightedGraph.from_edges(n, [(1, 2)] if n == 2 else [])
    seq = [int(x) + 1 for x in rng.integers(0, n, size=n - 2)]
    degree = [1] * (n + 1)
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = next(v for v in range(1, n + 1) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = (w for w in range(1, n + 1) if degree[w] == 1)
    edges.append((u, v))
    return WeightedGraph.from_edges(n, edges)


def _default_edge_probability(n: int) -> float:
    return min(1.0, 2 * math.log(n) / n) if n > 1 else 1.0


def _random_connected_edges(n: int, rng: np.random.Generator, p: float | None = None) -> list[tuple[int, int]]:
    """Erdos-Renyi edges, redrawn until connected."""
    if n == 1:
        return []
    p = _default_edge_probability(n) if p is None else p
    iu, ju = np.triu_indices(n, k=1)
    while True:
        keep = rng.random(len(iu)) < p
        edges = [(int(i) + 1, int(j) + 1) for i, j in zip(iu[keep], ju[keep])]
        parent = list(range(n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        comps = n
        for u, v in edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                comps -= 1
        if comps == 1:
            return edges


def random_connected_graph(n: int, rng: np.random.Generator, p: float | None = None) -> WeightedGraph:
    return WeightedGraph.from_edges(n, _random_connected_edges(n, rng, p))


def generate_family(spec: FamilySpec) -> WeightedGraph:
    """Unit-weight member of a graph family; random families use ``spec.seed``."""
    n, fam = spec.n, spec.family
    if fam == "path":
        return WeightedGraph.from_edges(n, [(i, i + 1) for i in range(1, n)])
    if fam == "cycle":
        return WeightedGraph.from_edges(n, [(i, i + 1) for i in range(1, n)] + [(n, 1)])
    if fam == "star":
        return WeightedGraph.from_edges(n, [(1, i) for i in range(2, n + 1)])
    if fam == "complete":
        return complete_multipartite([1] * n)
    if fam == "k4":
        return complete_multipartite([1] * 4)
    if fam == "multipartite":
        return complete_multipartite(spec.parts)
    rng = sample_rng(spec.seed)
    if fam == "tree-random":
        return random_tree(n, rng)
    return random_connected_graph(n, rng, spec.p_edge)


def _draw_weights(rng: np.random.Generator, m: int, law: str) -> tuple[list[int], int]:
    """Integer numerators over a common denominator."""
    if law == "uniform":
        den = 2**DYADIC_BITS
        return [int(x) for x in rng.integers(1, den, size=m, endpoint=True)], den
    if law == "grid":
        return [int(x) for x in rng.integers(0, 10, size=m, endpoint=True)], 10
    if law == "exp":
        den = 2**DYADIC_BITS
        return [int(round(x * den)) for x in rng.exponential(size=m)], den
    raise ValueError(f"unknown weight law {law!r}; expected one of {', '.join(LAWS)}")


def random_weighting(g: WeightedGraph, seed: int, law: str = "uniform", index: int = 0) -> WeightedGraph:
    """``g`` reweighted by a seeded draw from ``law``:

    * ``uniform``: (0, 1] on a 2**-20 grid
    * ``grid``: {0, 1/10, ..., 1}
    * ``exp``: Exp(1) rounded to a 2**-20 grid
    """
    nums, den = _draw_weights(sample_rng(seed, index), g.m, law)
    return g.reweighted({e: Fraction(k, den) for e, k in zip(g.edges, nums)})


def graph_id(g: WeightedGraph) -> str:
    return hashlib.blake2b(repr(sorted(g.weights)).encode(), digest_size=6).hexdigest() + f"-n{g.n}"


@dataclass
class ExperimentReport:
    kind: str
    params: dict
    samples: int = 0
    records: list[dict] = field(default_factory=list)
    max_i_plus: int = 0
    bound: int | None = None
    violations: list[dict] = field(default_factory=list)
    extra: dict = field(default_factory=dict)
    wall_clock: float = 0.0

    def as_dict(self, include_records: bool = True) -> dict:
        out = {
            "kind": self.kind,
            "params": self.params,
            "samples": self.samples,
            "max_i_plus": self.max_i_plus,
            "bound": self.bound,
            "violations": self.violations,
            "extra": self.extra,
            "wall_clock": round(self.wall_clock, 3),
        }
        if include_records:
            out["records"] = self.records
        return out


def _persist(path: str | Path | None, record: dict) -> None:
    if path is None:
        return
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(json.dumps(record, sort_keys=True) + "\n")
        fh.flush()


def weak_bound(n: int) -> int:
    return (n + 1) // 3


def weak_conjecture_scan(
    n: int, samples: int, seed: int, law: str = "uniform", violations_path: str | Path | None = None
) -> ExperimentReport:
    """Random connected graph plus random weighting per sample; count positive
    eigenvalues of the distance matrix against ``floor((n + 1) / 3)``.

    A sample over the bound is re-checked with :func:`exact_inertia`; only
    confirmed samples become violations, the rest land in
    ``extra["unconfirmed"]``.
    """
    if not 1 <= n <= 40:
        raise ValueError(f"n must be in 1..40, got {n}")
    start = time.perf_counter()
    bound = weak_bound(n)
    report = ExperimentReport(
        "weak",
        {"n": n, "samples": samples, "seed": seed, "law": law, "graph_law": "erdos-renyi p=2ln(n)/n, connected by rejection"},
        bound=bound,
        extra={"unconfirmed": []},
    )
    for idx in range(samples):
        rng = sample_rng(seed, idx)
        edges = _random_connected_edges(n, rng)
        nums, den = _draw_weights(rng, len(edges), law)
        dist = floyd_warshall_int(n, [(u, v, k) for (u, v), k in zip(edges, nums)])
        spec = eigenvalues_symmetric(dist.astype(float) / den)
        inert = spec.inertia()
        gid = hashlib.blake2b(repr(edges).encode(), digest_size=6).hexdigest() + f"-n{n}"
        report.records.append({"index": idx, "seed": seed, "graph": gid, "inertia": list(inert)})
        report.max_i_plus = max(report.max_i_plus, inert.i_plus)
        if inert.i_plus > bound:
            g = WeightedGraph.from_edges(n, [(u, v, Fraction(k, den)) for (u, v), k in zip(edges, nums)])
            exact = exact_inertia(distance_matrix(g))
            record = {
                "kind": "weak",
                "n": n,
                "seed": seed,
                "index": idx,
                "law": law,
                "graph": g.to_text(),
                "inertia": list(inert),
                "exact_inertia": list(exact),
                "eigenvalues": list(spec.eigenvalues),
            }
            if exact.i_plus > bound:
                report.violations.append(record)
                _persist(violations_path, record)
            else:
                report.extra["unconfirmed"].append(record)
    report.samples = samples
    if n % 3 == 2:
        k = (n - 2) // 3
        tight = complete_multipartite([2] + [3] * k)
        ip = inertia(distance_matrix(tight)).i_plus
        report.extra["tight_example"] = {"graph": "K_{2" + ",3" * k + "}", "i_plus": ip, "attains_bound": ip == bound}
    report.wall_clock = time.perf_counter() - start
    return report


def adversarial_i_plus(g: WeightedGraph, pattern: WeightedGraph, model: list[set[int]]) -> int:
    """i_plus of ``g`` weighted so its distance spectrum is the unit-weight
    spectrum of ``pattern`` padded with zeros."""
    plan = minor_plan(g, pattern, model)
    topo = apply_plan(g, plan)
    unit = topo.reweighted({e: Fraction(1) for e in topo.weights})
    psi = minor_weighting(g, plan, unit)
    return inertia(distance_matrix(psi)).i_plus


def strong_conjecture_scan(
    g: WeightedGraph,
    samples: int,
    seed: int,
    k: int,
    law: str = "uniform",
    cap: int | None = None,
    violations_path: str | Path | None = None,
) -> ExperimentReport:
    """Does ``g`` contain K_{2,3,...,3} (``k`` threes), and how many positive
    eigenvalues do sampled weightings reach?

    Flags ``counterexample`` when the minor is absent yet some weighting has
    more than ``k`` positive eigenvalues, and ``search_gap`` when the minor is
    present but the minor-realising weighting fails to exceed ``k``.
    Counterexamples are confirmed with :func:`exact_inertia`.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    start = time.perf_counter()
    pattern = complete_multipartite([2] + [3] * k)
    model = find_minor_model(g, pattern, cap)
    report = ExperimentReport(
        "strong",
        {"graph": graph_id(g), "k": k, "samples": samples, "seed": seed, "law": law},
        bound=k,
        extra={"unconfirmed": []},
    )
    gid = graph_id(g)
    for idx in range(samples):
        weighted = random_weighting(g, seed, law, idx)
        inert = inertia(distance_matrix(weighted))
        report.records.append({"index": idx, "seed": seed, "graph": gid, "inertia": list(inert)})
        report.max_i_plus = max(report.max_i_plus, inert.i_plus)
        if model is None and inert.i_plus > k:
            exact = exact_inertia(distance_matrix(weighted))
            record = {
                "kind": "strong",
                "k": k,
                "seed": seed,
                "index": idx,
                "law": law,
                "graph": weighted.to_text(),
                "inertia": list(inert),
                "exact_inertia": list(exact),
            }
            if exact.i_plus > k:
                report.violations.append(record)
                _persist(violations_path, record)
            else:
                report.extra["unconfirmed"].append(record)
    report.samples = samples
    report.extra["has_minor"] = model is not None
    report.extra["counterexample"] = bool(report.violations)
    if model is not None:
        adv = adversarial_i_plus(g, pattern, model)
        report.extra["adversarial_i_plus"] = adv
        report.extra["search_gap"] = adv <= k
        report.max_i_plus = max(report.max_i_plus, adv)
    else:
        report.extra["search_gap"] = False
    report.wall_clock = time.perf_counter() - start
    return report


def lp_embeddable_scan(n: int, dim: int, p: float, samples: int, seed: int) -> ExperimentReport:
    """Random points in ``[0, 1]^dim`` (2**-20 grid) under the lp norm; count
    samples whose distance matrix has more than one positive eigenvalue.

    For ``p <= 2`` such samples are recorded as violations; for ``p > 2``
    they are exploratory and only the fraction is reported.
    """
    if not (p == math.inf or p >= 1):
        raise ValueError(f"p must be >= 1, got {p}")
    start = time.perf_counter()
    den = 2**DYADIC_BITS
    report = ExperimentReport(
        "lp",
        {"n": n, "dim": dim, "p": p if p != math.inf else "inf", "samples": samples, "seed": seed, "coords": "uniform [0,1] on 2^-20 grid"},
        bound=1,
    )
    exceeding = 0
    for idx in range(samples):
        rng = sample_rng(seed, idx)
        nums = rng.integers(0, den, size=(n, dim), endpoint=True)
        points = tuple(tuple(Fraction(int(x), den) for x in row) for row in nums)
        metric = lp_point_metric(PointSet(points, p))
        inert = inertia(metric)
        report.records.append({"index": idx, "seed": seed, "graph": f"points-{idx}", "inertia": list(inert)})
        report.max_i_plus = max(report.max_i_plus, inert.i_plus)
        if inert.i_plus > 1:
            exceeding += 1
            if p <= 2:
                report.violations.append({"index": idx, "points": [[str(x) for x in pt] for pt in points], "inertia": list(inert)})
    report.samples = samples
    report.extra["exceeding"] = exceeding
    report.extra["fraction_exceeding"] = exceeding / samples if samples else 0.0
    report.wall_clock = time.perf_counter() - start
    return report

"""Command-line interface.

Exit status: 0 on success, 1 on a domain error (diagnostic on stderr), 2 on
a usage error.  ``--json`` prints one JSON document with a fixed field order
per subcommand; exact values are fraction strings, floats appear only in
spectra and timings.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from metricsplit.checks import verify_graph
from metricsplit.graph import GraphError, WeightedGraph, complete_multipartite, parse_graph
from metricsplit.lab import FAMILIES, LAWS, FamilySpec, generate_family, lp_embeddable_scan, random_weighting
from metricsplit.lab import strong_conjecture_scan, weak_conjecture_scan
from metricsplit.metric import DistanceMatrix, MetricFormatError, distance_matrix, parse_metric
from metricsplit.minors import (
    MinorCapError,
    adversarial_weighting_k23,
    find_minor_model,
    has_k23_subdivision,
    k23_distance_minor_test,
)
from metricsplit.spectral import eigenvalues_symmetric, perron_check
from metricsplit.splits import DecompositionError, SplitCapError, decompose, l1_embed

DOMAIN_ERRORS = (GraphError, MetricFormatError, SplitCapError, MinorCapError, DecompositionError, ValueError, OSError)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_graph(path: str) -> WeightedGraph:
    return parse_graph(_read(path))


def _load_metric(args) -> DistanceMatrix:
    if args.matrix:
        return parse_metric(_read(args.matrix))
    if not args.graph:
        raise ValueError("give a graph file or --matrix")
    return distance_matrix(_load_graph(args.graph))


def _matrix(m: DistanceMatrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in m.d]


def _spectrum(m, tol) -> dict:
    spec = eigenvalues_symmetric(m, tol)
    return {"eigenvalues": list(spec.eigenvalues), "inertia": list(spec.inertia()), "tol": spec.tol}


def _pattern(text: str) -> tuple[str, int]:
    if text == "k23":
        return "k23", 1
    if text.startswith("k23s:"):
        try:
            k = int(text[5:])
        except ValueError:
            k = 0
        if k >= 1:
            return "k23s", k
    raise argparse.ArgumentTypeError(f"expected k23 or k23s:<k> with k >= 1, got {text!r}")


def _parts(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated part sizes, got {text!r}") from None


def _p_value(text: str) -> float:
    if text.lower() in ("inf", "infinity"):
        return math.inf
    return float(text)


def cmd_analyze(args) -> dict:
    m = _load_metric(args)
    dec = decompose(m, args.cap)
    out = {"n": m.n, "distance_matrix": _matrix(m)}
    out.update(_spectrum(m, args.tol))
    out["splits"] = [s.as_dict() for s in dec.splits]
    out["residue"] = [[str(x) for x in row] for row in dec.residue]
    out["totally_decomposable"] = dec.totally_decomposable
    if args.embed:
        if dec.totally_decomposable:
            ps = l1_embed(m, args.cap)
            out["l1_embedding"] = [[str(x) for x in pt] for pt in ps.points]
        else:
            out["l1_embedding"] = None
    return out


def cmd_inertia(args) -> dict:
    m = _load_metric(args)
    out = {"n": m.n}
    out.update(_spectrum(m, args.tol))
    out["perron"] = perron_check(m, args.tol).as_dict()
    return out


def cmd_minor(args) -> dict:
    g = _load_graph(args.graph)
    kind, k = args.pattern
    if kind == "k23":
        cert = has_k23_subdivision(g)
        return {"pattern": "k23", "present": cert is not None, "certificate": cert.as_dict() if cert else None}
    pattern = complete_multipartite([2] + [3] * k)
    model = find_minor_model(g, pattern, args.cap)
    return {
        "pattern": f"k23s:{k}",
        "present": model is not None,
        "branch_sets": [sorted(s) for s in model] if model else None,
    }


def cmd_distminor(args) -> dict:
    m = _load_metric(args)
    w = k23_distance_minor_test(m, args.cap)
    return {"n": m.n, "present": w is not None, "witness": w.as_dict() if w else None}


def cmd_adversary(args) -> dict:
    g = _load_graph(args.graph)
    adv = adversarial_weighting_k23(g)
    if adv is None:
        return {"present": False, "weighting": None, "graph": None, "eigenvalues": None, "inertia": None}
    spec = _spectrum(distance_matrix(adv.graph), args.tol)
    return {
        "present": True,
        "weighting": adv.as_dict(),
        "graph": adv.graph.to_text(),
        "eigenvalues": spec["eigenvalues"],
        "inertia": spec["inertia"],
    }


def cmd_verify(args) -> dict:
    g = _load_graph(args.graph)
    reports = verify_graph(g, args.cap)
    required = [r for r in reports if not r.informational]
    return {
        "passed": all(r.passed for r in required),
        "reports": [r.as_dict() for r in reports],
    }


def _search_graph(args) -> WeightedGraph:
    if args.graph:
        return _load_graph(args.graph)
    if not args.family:
        raise ValueError("strong search needs a graph file or --family")
    return generate_family(FamilySpec(args.family, args.n, args.parts, args.p_edge, args.seed))


def cmd_search(args) -> dict:
    if args.conjecture == "weak":
        report = weak_conjecture_scan(args.n, args.samples, args.seed, args.law, args.violations)
    elif args.conjecture == "strong":
        report = strong_conjecture_scan(_search_graph(args), args.samples, args.seed, args.k, args.law, args.cap, args.violations)
    else:
        report = lp_embeddable_scan(args.n, args.dim, args.p, args.samples, args.seed)
    return report.as_dict(include_records=args.records)


def cmd_gen(args) -> dict:
    g = generate_family(FamilySpec(args.family, args.n, args.parts, args.p_edge, args.seed))
    if args.law != "unit":
        g = random_weighting(g, args.seed, args.law)
    text = g.to_text()
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    return {"family": args.family, "n": g.n, "m": g.m, "graph": text}


def _human(cmd: str, out: dict) -> str:
    if cmd == "gen":
        return out["graph"].rstrip("\n")
    if cmd == "verify":
        lines = []
        for r in out["reports"]:
            tag = "skip" if r["skipped"] else ("ok" if r["passed"] else ("info" if r["informational"] else "FAIL"))
            lines.append(f"{tag:4} {r['name']}")
        lines.append("passed" if out["passed"] else "FAILED")
        return "\n".join(lines)
    lines = []
    for key, val in out.items():
        if isinstance(val, list) and val and isinstance(val[0], list) and not isinstance(val[0][0], dict):
            lines.append(f"{key}:")
            lines += ["  " + " ".join(str(x) for x in row) for row in val]
        elif isinstance(val, (dict, list)):
            lines.append(f"{key}: {json.dumps(val)}")
        else:
            lines.append(f"{key}: {val}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print JSON")
    common.add_argument("--tol", type=float, default=None, help="absolute zero tolerance for eigenvalues")
    common.add_argument("--cap", type=int, default=None, help="vertex cap for split and minor searches")

    parser = _Parser(prog="metricsplit", description="Finite metrics of weighted graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_or_matrix(p):
        p.add_argument("graph", nargs="?", help="graph file")
        p.add_argument("--matrix", help="metric file instead of a graph")

    p = sub.add_parser("analyze", parents=[common], help="distances, spectrum and split decomposition")
    graph_or_matrix(p)
    p.add_argument("--embed", action="store_true", help="add l1 coordinates")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("inertia", parents=[common], help="eigenvalues and inertia")
    graph_or_matrix(p)
    p.set_defaults(func=cmd_inertia)

    p = sub.add_parser("minor", parents=[common], help="search for a K_{2,3} or K_{2,3,...,3} minor")
    p.add_argument("graph")
    p.add_argument("--pattern", type=_pattern, default=("k23", 1), help="k23 or k23s:<k>")
    p.set_defaults(func=cmd_minor)

    p = sub.add_parser("distminor", parents=[common], help="test for a K_{2,3} distance minor")
    graph_or_matrix(p)
    p.set_defaults(func=cmd_distminor)

    p = sub.add_parser("adversary", parents=[common], help="weighting with two positive eigenvalues")
    p.add_argument("graph")
    p.set_defaults(func=cmd_adversary)

    p = sub.add_parser("verify", parents=[common], help="run the property checks on a graph")
    p.add_argument("graph")
    p.set_defaults(func=cmd_verify)

    family = argparse.ArgumentParser(add_help=False)
    family.add_argument("--family", choices=FAMILIES)
    family.add_argument("--n", type=int, default=6)
    family.add_argument("--parts", type=_parts, default=())
    family.add_argument("--p-edge", type=float, default=None)
    family.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("search", parents=[common, family], help="randomised conjecture scans")
    p.add_argument("--conjecture", choices=("weak", "strong", "lp"), required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--law", choices=LAWS, default="uniform")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--dim", type=int, default=8)
    p.add_argument("--p", type=_p_value, default=1.0)
    p.add_argument("--graph", help="graph file for the strong scan")
    p.add_argument("--violations", default="violations.ndjson", help="NDJSON file for violations")
    p.add_argument("--records", action="store_true", help="include per-sample records")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("gen", parents=[common, family], help="write a graph from a family")
    p.add_argument("--law", choices=("unit",) + LAWS, default="unit")
    p.add_argument("-o", "--output", help="write the graph file here")
    p.set_defaults(func=cmd_gen)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.tol is not None and not args.tol >= 0:
        print("metricsplit: error: --tol must be nonnegative", file=sys.stderr)
        return 2
    try:
        out = args.func(args)
    except DOMAIN_ERRORS as exc:
        print(f"metricsplit {args.command}: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps(out, default=_encode))
    else:
        print(_human(args.command, out))
    if args.command == "verify" and not out["passed"]:
        return 1
    return 0


def _encode(x):
    if isinstance(x, Fraction):
        return str(x)
    raise TypeError(f"cannot encode {type(x).__name__}")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

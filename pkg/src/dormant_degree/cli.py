"""dormant-degree: count edge numberings, query degrees, fit quasi-polynomials.

Usage:
    dormant-degree count --graph chain:3 --p 5 --level 2
    dormant-degree degree ver --genus 3 --p 7
    dormant-degree fit --quantity Q --genus 3 --degree 6 --period 1 --pmin 3 --pmax 25 --parity-restricted
    dormant-degree verify tables
    dormant-degree catalog --name k4

Every successful run prints one JSON document on stdout.  Exit status is 0
on success, 1 when a verification finds a mismatch and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from fractions import Fraction

from . import formulas, quasipoly
from .admissibility import LevelParams
from .enumeration import DEFAULT_MEMCAP, MemoryCapExceeded, count, count_dp
from .graph import CATALOG_NAMES, GraphError, catalog, genus, load_graph, serialize_graph
from .verify import verify_identities, verify_tables

log = logging.getLogger("dormant_degree")


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dormant-degree", description=__doc__.split("\n")[0])
    parser.add_argument("--stable", action="store_true", help="omit timings so output is byte-identical across runs")
    parser.add_argument("--threads", type=_positive, default=os.cpu_count() or 1)
    parser.add_argument("--memcap", type=_positive, default=DEFAULT_MEMCAP, help="bytes per DP table")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="count balanced (p,N)-edge numberings")
    c.add_argument("--graph", required=True, help="catalog name or path to a graph .json")
    c.add_argument("--p", type=_nonneg, required=True)
    c.add_argument("--level", type=_positive, default=1)
    c.add_argument("--method", choices=("brute", "dp", "auto"), default="auto")

    d = sub.add_parser("degree", help="degree of pi1, pi_N or the Verschiebung")
    d.add_argument("quantity", choices=("pi1", "pi_N", "ver"))
    d.add_argument("--genus", type=_positive, required=True)
    d.add_argument("--p", type=_nonneg, required=True)
    d.add_argument("--level", type=_positive, default=1)
    d.add_argument("--graph", help="use count ratios on this graph instead of closed forms")
    d.add_argument("--precision-bits", type=_positive, default=128)

    f = sub.add_parser("fit", help="fit H_N or Q as a quasi-polynomial in p")
    f.add_argument("--quantity", choices=("H", "Q"), required=True)
    f.add_argument("--genus", type=_positive, required=True)
    f.add_argument("--level", type=_positive, default=1)
    f.add_argument("--degree", type=_nonneg, required=True)
    f.add_argument("--period", choices=("1", "2", "4", "auto"), default="auto")
    f.add_argument("--pmin", type=_nonneg, default=0)
    f.add_argument("--pmax", type=_nonneg, required=True)
    f.add_argument("--odd-only", action="store_true", help="sample odd p only (always on for Q)")
    f.add_argument("--parity-restricted", action="store_true",
                   help="use only monomials t^d, t^(d-2), ...")

    v = sub.add_parser("verify", help="recompute published tables or cross-check identities")
    v.add_argument("target", choices=("tables", "identities", "all"))
    v.add_argument("--scale", choices=("small", "full"), default="small")

    g = sub.add_parser("catalog", help="list catalog names or print one graph as JSON")
    g.add_argument("--name")
    return parser


def _cmd_count(args) -> tuple[int, dict]:
    graph = load_graph(args.graph)
    lp = LevelParams(args.p, args.level)
    report = count(graph, lp, method=args.method, threads=args.threads, memcap=args.memcap)
    return 0, report.to_dict(stable=args.stable)


def _cmd_degree(args) -> tuple[int, dict]:
    graph = load_graph(args.graph) if args.graph else None
    res = formulas.degree(args.quantity, args.genus, args.p, args.level, args.precision_bits, graph=graph,
                          threads=args.threads, memcap=args.memcap)
    return 0, res.to_dict()


def _samples(args) -> list[tuple[int, object]]:
    graph = catalog(f"chain:{args.genus}")
    odd = args.odd_only or args.quantity == "Q"
    ps = [p for p in range(args.pmin, args.pmax + 1) if not odd or p % 2]
    out = []
    for p in ps:
        if args.quantity == "H":
            out.append((p, count_dp(graph, LevelParams(p, args.level), threads=args.threads).count))
        else:
            lower = count_dp(graph, LevelParams(p, 1), threads=args.threads).count
            if lower == 0:
                continue
            upper = count_dp(graph, LevelParams(p, 2), threads=args.threads).count
            out.append((p, Fraction(upper, lower)))
    return out


def _cmd_fit(args) -> tuple[int, dict]:
    samples = _samples(args)
    if args.period == "auto":
        res = quasipoly.fit_auto(samples, args.degree, args.parity_restricted)
        q, rejected = res.quasi, {str(k): v for k, v in res.rejected.items()}
    else:
        q = quasipoly.fit(samples, args.degree, int(args.period), args.parity_restricted)
        rejected = {}
    kind = "Q" if args.quantity == "Q" else ("H1" if args.level == 1 else "H2" if args.level == 2 else None)
    doc = json.loads(q.to_json())
    doc.update({
        "quantity": args.quantity,
        "genus": args.genus,
        "level": args.level,
        "samples": [[t, str(v)] for t, v in samples],
        "rejected_periods": rejected,
    })
    if kind and args.genus >= 2:
        pred = quasipoly.predicted_leading(kind, args.genus)
        doc["predicted_leading"] = f"{pred.numerator}/{pred.denominator}"
        doc["leading"] = {str(r): str(q.leading(r)) for r in q.defined_residues()}
    return 0, doc


def _cmd_verify(args) -> tuple[int, dict]:
    outcomes = {}
    if args.target in ("tables", "all"):
        outcomes["tables"] = verify_tables(threads=args.threads)
    if args.target in ("identities", "all"):
        outcomes["identities"] = verify_identities(args.scale, threads=args.threads)
    ok = all(o.ok for o in outcomes.values())
    doc = {
        "ok": ok,
        "checked": {k: len(o.checks) for k, o in outcomes.items()},
        "mismatches": [c.to_dict() for o in outcomes.values() for c in o.failures()],
    }
    return (0 if ok else 1), doc


def _cmd_catalog(args) -> tuple[int, dict]:
    if args.name is None:
        return 0, {"names": list(CATALOG_NAMES)}
    graph = catalog(args.name)
    doc = json.loads(serialize_graph(graph))
    doc["genus"] = genus(graph)
    return 0, doc


COMMANDS = {
    "count": _cmd_count,
    "degree": _cmd_degree,
    "fit": _cmd_fit,
    "verify": _cmd_verify,
    "catalog": _cmd_catalog,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr, format="%(levelname)s %(message)s")
    start = time.perf_counter()
    try:
        code, doc = COMMANDS[args.command](args)
    except (GraphError, KeyError, ValueError, ArithmeticError, MemoryCapExceeded) as exc:
        print(f"dormant-degree: error: {exc}", file=sys.stderr)
        return 2
    log.info("%s finished in %.2fs", args.command, time.perf_counter() - start)
    print(json.dumps(doc))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

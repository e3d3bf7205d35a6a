"""``frieze`` command line: count, table, graph, render, verify.

Exit codes: 0 success, 1 mismatch or failed check, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import time
from pathlib import Path as FsPath
from typing import List, Optional

from . import formulas, frieze, verify
from .exceptions import FriezeError
from .fareygraph import build
from .modring import totient
from .pathcount import CountReport, Method, Path, count_X, count_Y, y_space

COUNT_N_MAX = 30
TABLE_N_MAX = 12
GRAPH_N_MAX = 60
ZW_MODULUS_MAX = 27

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# counting


def _query(kind: str, n: int, m: int) -> dict:
    return {"family": f"{kind}_frieze", "n": n, "m": m}


def formula_report(kind: str, n: int, m: int) -> CountReport:
    q = formulas.FriezeCountQuery(n, m, formulas.FriezeKind(kind))
    t0 = time.perf_counter()
    value = q.formula()
    return CountReport(_query(kind, n, m), Method.FORMULA, value, time.perf_counter() - t0)


def enumerate_report(kind: str, n: int, m: int) -> CountReport:
    t0 = time.perf_counter()
    if kind == "tame":
        paths = count_X(n, m)
        value = totient(n) * paths
        detail = {"family": "X", "path_count": paths, "multiplier": totient(n)}
    else:
        paths = count_Y(n, m)
        if paths % n:
            raise FriezeError(f"|Y_{m}({n})| = {paths} is not divisible by {n}")
        value = paths // n
        detail = {"family": "Y", "path_count": paths, "divisor": n}
    return CountReport(
        _query(kind, n, m), Method.TRANSFER_MATRIX, value, time.perf_counter() - t0, detail
    )


class CountCache:
    """JSON map from query key to decimal count string."""

    def __init__(self, directory: str):
        self.path = FsPath(directory) / "counts.json"
        self.data = json.loads(self.path.read_text()) if self.path.exists() else {}

    def get(self, key: str) -> Optional[int]:
        value = self.data.get(key)
        return None if value is None else int(value)

    def put(self, key: str, value: int) -> None:
        self.data[key] = str(value)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.path.write_text(json.dumps(self.data, indent=1, sort_keys=True))


def _cached(cache: Optional[CountCache], key: str, compute, recheck: bool) -> CountReport:
    if cache is None:
        return compute()
    hit = cache.get(key)
    if hit is None:
        report = compute()
        cache.put(key, report.count)
        return report
    if recheck:
        report = compute()
        report.detail["cache_hit"] = True
        report.detail["cache_consistent"] = report.count == hit
        if report.count != hit:
            raise FriezeError(f"cache entry {key} = {hit} disagrees with recomputation")
        return report
    return CountReport(json.loads(key)["query"], Method(json.loads(key)["method"]), hit,
                       0.0, {"cache_hit": True})


def cmd_count(args) -> int:
    _bounds(args, n_max=COUNT_N_MAX)
    cache = CountCache(os.environ.get("FRIEZE_CACHE_DIR", ".frieze-cache")) if args.cache else None
    reports = []
    for method, fn in (("formula", formula_report), ("enumerate", enumerate_report)):
        if args.method in (method, "both"):
            key = json.dumps({"query": _query(args.kind, args.n, args.m),
                              "method": Method.FORMULA.value if method == "formula"
                              else Method.TRANSFER_MATRIX.value}, sort_keys=True)
            reports.append(_cached(cache, key, lambda fn=fn: fn(args.kind, args.n, args.m),
                                   args.verify_cache))
    payload = {"kind": args.kind, "n": args.n, "m": args.m,
               "reports": [r.to_json() for r in reports]}
    code = EXIT_OK
    if len(reports) == 2:
        payload["match"] = reports[0].count == reports[1].count
        code = EXIT_OK if payload["match"] else EXIT_FAIL
    sys.stdout.write(_dump(payload))
    return code


def cmd_table(args) -> int:
    _bounds(args, n_max=TABLE_N_MAX)
    rows = []
    for n in range(2, args.n_max + 1):
        for m in range(2, args.m_max + 1):
            f = formula_report(args.kind, n, m)
            e = enumerate_report(args.kind, n, m)
            rows.append((n, m, f, e))
    ok = all(f.count == e.count for _, _, f, e in rows)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["kind", "n", "m", "formula", "enumerated", "match"])
        for n, m, f, e in rows:
            w.writerow([args.kind, n, m, f.count, e.count, str(f.count == e.count).lower()])
        sys.stdout.write(buf.getvalue())
    else:
        sys.stdout.write(_dump([
            {"n": n, "m": m, "formula": f.to_json(timing=False),
             "enumerated": e.to_json(timing=False), "match": f.count == e.count}
            for n, m, f, e in rows
        ]))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_graph(args) -> int:
    if args.n < 2:
        raise UsageError(f"--n must be >= 2, got {args.n}")
    if args.n > GRAPH_N_MAX and not args.unsafe_large:
        raise UsageError(f"--n above {GRAPH_N_MAX} needs --unsafe-large")
    G = build(args.n)
    sys.stdout.write(G.to_dot() if args.format == "dot" else G.to_json())
    return EXIT_OK


def cmd_render(args) -> int:
    if args.m < 2 or args.n < 2:
        raise UsageError("render needs --n >= 2 and --m >= 2")
    _bounds(args, n_max=COUNT_N_MAX)
    space = y_space(args.n, args.m)
    total = space.count()
    if args.seed is not None:
        index = random.Random(args.seed).randrange(total)
    else:
        index = args.index
    if not 0 <= index < total:
        raise UsageError(f"--index {index} out of range; there are {total} semiclosed paths")
    G = space.graph
    gamma = Path(tuple(G.vertices[i] for i in space.unrank(index)))
    window = frieze.render_from_path(gamma, args.periods)
    text = window.to_json() + "\n" if args.format == "json" else window.to_text()
    sys.stdout.write(text)
    problems = verify.render_problems(gamma, window)
    print(f"path {index}/{total}: {gamma}", file=sys.stderr)
    if problems:
        print(f"rendered window fails: {', '.join(problems)}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_verify(args) -> int:
    if not args.unsafe_large:
        if args.n_max > TABLE_N_MAX:
            raise UsageError(f"--n-max above {TABLE_N_MAX} needs --unsafe-large")
        if any(p**args.r_max > ZW_MODULUS_MAX for p in args.primes):
            raise UsageError(f"p^r above {ZW_MODULUS_MAX} needs --unsafe-large")
    cfg = verify.VerifyConfig(
        n_max=args.n_max, m_max=args.m_max, primes=tuple(args.primes), r_max=args.r_max,
        k_max=args.k_max, seed=args.seed, samples=args.samples,
    )
    checks = []
    names = verify.SUITES if args.suite == "all" else (args.suite,)
    for name in names:
        t0 = time.perf_counter()
        found = verify.SUITE_FUNCS[name](cfg)
        failed = sum(not c.passed for c in found)
        print(f"{name:16s} {len(found) - failed:5d}/{len(found):<5d} "
              f"{'PASS' if not failed else 'FAIL'}  {time.perf_counter() - t0:.2f}s",
              file=sys.stderr)
        checks.extend(found)
    passed = all(c.passed for c in checks)
    payload = {
        "suite": args.suite,
        "seed": args.seed,
        "config": {"n_max": cfg.n_max, "m_max": cfg.m_max, "primes": list(cfg.primes),
                   "r_max": cfg.r_max, "k_max": cfg.k_max, "samples": cfg.samples},
        "passed": passed,
        "total": len(checks),
        "failed": sum(not c.passed for c in checks),
        "checks": [c.to_json() for c in checks],
    }
    sys.stdout.write(_dump(payload))
    print(f"seed={args.seed} {'ALL PASS' if passed else 'FAILURES'}", file=sys.stderr)
    return EXIT_OK if passed else EXIT_FAIL


def _bounds(args, n_max: int) -> None:
    n = getattr(args, "n", None) or getattr(args, "n_max", None)
    m = getattr(args, "m", None) or getattr(args, "m_max", None)
    if n is None or n < 2:
        raise UsageError(f"modulus must be >= 2, got {n}")
    if m is None or m < 2:
        raise UsageError(f"width must be >= 2, got {m}")
    if n > n_max and not args.unsafe_large:
        raise UsageError(f"modulus above {n_max} needs --unsafe-large")


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frieze", description="Count tame and tame regular friezes over Z/nZ."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--unsafe-large", action="store_true",
                       help="lift the desk-scale bounds on the parameters")

    p = sub.add_parser("count", help="count friezes by formula and/or path enumeration")
    p.add_argument("kind", choices=["tame", "regular"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--method", choices=["formula", "enumerate", "both"], default="both")
    p.add_argument("--cache", action="store_true",
                   help="memoize counts under $FRIEZE_CACHE_DIR")
    p.add_argument("--verify-cache", action="store_true",
                   help="recompute cache hits and fail on disagreement")
    common(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("table", help="formula vs enumeration over a grid")
    p.add_argument("kind", choices=["tame", "regular"])
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--m-max", type=int, default=6)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    common(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("graph", help="export E_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=["dot", "json"], default="dot")
    common(p)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("render", help="render a regular frieze from a semiclosed path")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    pick = p.add_mutually_exclusive_group()
    pick.add_argument("--index", type=int, default=0)
    pick.add_argument("--seed", type=int)
    p.add_argument("--periods", type=int, default=1)
    p.add_argument("--format", choices=["text", "json"], default="text")
    common(p)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", choices=list(verify.SUITES) + ["all"], default="all")
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--m-max", type=int, default=7)
    p.add_argument("--primes", type=int, nargs="+", default=[2, 3])
    p.add_argument("--r-max", type=int, default=3)
    p.add_argument("--k-max", type=int, default=3)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"frieze: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FriezeError as exc:
        print(f"frieze: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

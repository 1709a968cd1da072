"""Command-line interface.

Exit codes: 0 success, 1 a verification check failed, 2 usage error.
Errors are written to stderr as a single JSON record.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .derived import enumerate_filtrations
from .quiver import IllegalType, make_dynkin, parse_type, positive_roots
from .reps import hom_table
from .specmap import make_poset, map_lattice, monotone_maps
from .subcat import UnsupportedType, enumerate_wide, nc_lattice
from .verify import SUITES, run_suite


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p: argparse.ArgumentParser):
    p.add_argument("--type", required=True, help="Dynkin type, e.g. A3 or D (with --rank)")
    p.add_argument("--rank", type=int)
    p.add_argument("--orientation", help="one of +/- per diagram edge")
    p.add_argument("--char", default="2", help="comma separated characteristics")
    p.add_argument("--window", type=int, default=3)
    p.add_argument("--mult-bound", type=int, default=2)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--export", choices=("json", "dot", "table"), default="table")
    p.add_argument("--cache-dir")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quiverlab")
    sub = parser.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    for name in ("roots", "homtable", "wide", "filt"):
        _common(sub.add_parser(name))
    m = sub.add_parser("maps")
    m.add_argument("--spec", required=True, help="poset: point, chainK, fanK, antichainK or JSON")
    m.add_argument("--codomain", required=True, help="nc:TYPE, e.g. nc:A2")
    m.add_argument("--count", action="store_true")
    m.add_argument("--export", choices=("json", "dot", "table"), default="table")
    v = sub.add_parser("verify")
    v.add_argument("suite", choices=SUITES + ("all",))
    _common(v)
    return parser


def _quiver(args):
    t = args.type
    if args.rank is not None:
        typ, rank = t.upper(), args.rank
    else:
        typ, rank = parse_type(t)
    orient = args.orientation
    return make_dynkin(typ, rank, orient)


def _chars(args) -> list[int]:
    try:
        return [int(c) for c in str(args.char).split(",") if c != ""]
    except ValueError as exc:
        raise UsageError(f"bad --char value {args.char!r}") from exc


def cmd_roots(args, out):
    q = _quiver(args)
    roots = positive_roots(q)
    if args.export == "json":
        out.write(json.dumps({"quiver": q.name, "roots": [list(r) for r in roots]}) + "\n")
    else:
        for r in roots:
            out.write(" ".join(map(str, r)) + "\n")
    return 0


def cmd_homtable(args, out):
    q = _quiver(args)
    for c in _chars(args):
        t = hom_table(q, c, cache_dir=args.cache_dir)
        if args.export == "json":
            out.write(t.to_json() + "\n")
        else:
            out.write(f"# {q.name} char {c}: hom / ext\n")
            for i, r in enumerate(t.catalog):
                h = " ".join(map(str, t.hom[i]))
                e = " ".join(map(str, t.ext[i]))
                out.write(f"{''.join(map(str, r))}: {h} | {e}\n")
    return 0


def cmd_wide(args, out):
    q = _quiver(args)
    L = enumerate_wide(q, bound=args.mult_bound)
    if args.export == "dot":
        out.write(L.to_dot())
    elif args.export == "json":
        out.write(L.to_json() + "\n")
    else:
        for lab in L.labels:
            out.write(f"{lab}\n")
    return 0


def cmd_filt(args, out):
    q = _quiver(args)
    if args.window < 1:
        raise UsageError("--window must be at least 1")
    fs = enumerate_filtrations(nc_lattice(q), args.window)
    if args.export == "json":
        for f in fs:
            out.write(f.to_json() + "\n")
    else:
        out.write(f"{len(fs)}\n")
    return 0


def _codomain(text: str):
    kind, _, typ = text.partition(":")
    if kind != "nc" or not typ:
        raise UsageError(f"unknown codomain {text!r}; expected nc:TYPE")
    t, n = parse_type(typ)
    return nc_lattice(make_dynkin(t, n))


def cmd_maps(args, out):
    try:
        P = make_poset(args.spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    maps = monotone_maps(P, _codomain(args.codomain))
    if args.count:
        out.write(f"{len(maps)}\n")
    elif args.export == "dot":
        out.write(map_lattice(maps).to_dot())
    else:
        for m in maps:
            out.write(json.dumps(m.to_json(), sort_keys=True) + "\n")
    return 0


def _report_key(args, suite) -> str:
    q = _quiver(args)
    raw = json.dumps({"suite": suite, "quiver": json.loads(q.to_json()), "window": args.window,
                      "bound": args.mult_bound}, sort_keys=True)
    return hashlib.sha256(raw.encode()).hexdigest()[:16]


def _run_cached(args, suite) -> list[dict]:
    q = _quiver(args)
    if args.cache_dir:
        path = Path(args.cache_dir) / f"report-{suite}-{_report_key(args, suite)}.jsonl"
        if path.exists():
            return [json.loads(line) for line in path.read_text().splitlines() if line]
    recs = run_suite(suite, q, window=args.window)
    if args.cache_dir:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("".join(json.dumps(r, sort_keys=True) + "\n" for r in recs))
    return recs


def cmd_verify(args, out):
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as ex:
        results = list(ex.map(lambda s: _run_cached(args, s), suites))
    ok = True
    for recs in results:
        for r in recs:
            out.write(json.dumps(r, sort_keys=True) + "\n")
            ok = ok and r["pass"]
    total = sum(len(r) for r in results)
    passed = sum(x["pass"] for r in results for x in r)
    out.write(json.dumps({"summary": args.suite, "checks": total, "passed": passed, "pass": ok}) + "\n")
    return 0 if ok else 1


COMMANDS = {"roots": cmd_roots, "homtable": cmd_homtable, "wide": cmd_wide, "filt": cmd_filt,
            "maps": cmd_maps, "verify": cmd_verify}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.cmd](args, out)
    except (UsageError, IllegalType, UnsupportedType, ValueError) as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

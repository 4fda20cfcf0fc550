"""Command-line interface: ``m3cover {gen,m3,verify,analyze,ingest}``.

Reports are JSON lines with a fixed field order.  Ratios are strings such as
``"27/30 = 9/10"``; no decimal approximation of m3 is ever printed.
Exit codes: 0 success, 1 a check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import kernels
from .generators import ConstructionError, FamilySpec, build_family, params_for_fraction, predicted_m3
from .graph6 import Graph6Error, encode_graph6, read_graph6_lines
from .matching import count_perfect_matchings, is_3_edge_colorable, mask_to_edges
from .multipole import Multipole, ParseError, emit_multipole_text, parse_multipole_text, validate
from .solver import DEFAULT_CAP, CapExceeded, M3Error, format_ratio, m3
from .structure import (
    ORACLE_MAX_VERTICES,
    StructureError,
    cyclic_connectivity_oracle,
    cyclic_edge_connectivity,
    girth,
    is_bridgeless,
)
from .verify import CHECKS, check

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    pass


class _Out:
    def __init__(self, path: str | None):
        self.fh = open(path, "w") if path else sys.stdout

    def emit(self, record: dict) -> None:
        self.fh.write(json.dumps(record) + "\n")
        self.fh.flush()

    def close(self) -> None:
        if self.fh is not sys.stdout:
            self.fh.close()


def _add_family_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=["cc2", "cc4"], help="construction flavour")
    p.add_argument("--p", type=int, help="target fraction numerator")
    p.add_argument("--q", type=int, help="target fraction denominator")
    p.add_argument("--a", type=int, help="number of A-type blocks")
    p.add_argument("--b", type=int, help="number of B-type blocks")
    p.add_argument("--order", help="block arrangement, e.g. ABAB")
    p.add_argument("--scale", type=int, default=1, help="repeat the arrangement this many times")


def _family_spec(args) -> FamilySpec:
    k = 2 if args.family == "cc2" else 4
    if args.p is not None or args.q is not None:
        if args.p is None or args.q is None:
            raise InputError("--p and --q go together")
        if args.a is not None or args.b is not None:
            raise InputError("give either --p/--q or --a/--b, not both")
        a, b = params_for_fraction(k, args.p, args.q)
    else:
        if args.a is None:
            raise InputError("need --p/--q or --a [--b]")
        a, b = args.a, args.b or 0
    return FamilySpec(k, a, b, args.order, args.scale)


def _read_graphs(path: str) -> list[Multipole]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(str(exc)) from exc
    head = next((ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")), "")
    if head.startswith("multipole"):
        try:
            parsed = parse_multipole_text(text)
        except ParseError as exc:
            raise InputError(str(exc)) from exc
        graphs = parsed if isinstance(parsed, list) else [parsed]
    else:
        graphs = []
        for lineno, item in read_graph6_lines(text):
            if isinstance(item, Graph6Error):
                raise InputError(f"line {lineno}: {item}")
            graphs.append(item)
    if not graphs:
        raise InputError(f"{path}: no graph found")
    for g in graphs:
        problems = validate(g)
        if g.danglings:
            raise InputError(f"{g.name or path}: expected a graph, found dangling edges")
        if problems:
            raise InputError(f"{g.name or path}: not a cubic graph: {'; '.join(problems)}")
    return graphs


def _witness(g: Multipole, res) -> list:
    return [[list(g.links[e]) for e in mask_to_edges(m)] for m in res.witness]


def cmd_gen(args, out: _Out) -> int:
    t0 = time.perf_counter()
    spec = _family_spec(args)
    g = build_family(spec)
    pred = predicted_m3(spec.k, spec.total_a, spec.total_b)
    if args.format == "graph6":
        payload = encode_graph6(g).decode("ascii") + "\n"
    else:
        payload = emit_multipole_text(g)
    if args.out:
        Path(args.out).write_text(payload)
    else:
        sys.stdout.write(payload)
    record = {
        "command": "gen",
        "graph": spec.label(),
        "k": spec.k,
        "a": spec.total_a,
        "b": spec.total_b,
        "vertices": g.vertex_count,
        "edges": g.edge_count,
        "predicted_m3": format_ratio(int(pred * spec.edge_count), spec.edge_count),
        "format": args.format,
        "out": args.out,
        "elapsed_s": round(time.perf_counter() - t0, 3),
    }
    # keep stdout clean for the graph itself when no --out is given
    (out.emit if args.out or out.fh is not sys.stdout else _stderr_emit)(record)
    return EXIT_OK


def _stderr_emit(record: dict) -> None:
    sys.stderr.write(json.dumps(record) + "\n")


def _m3_record(name: str, g: Multipole, res, args, t0: float) -> dict:
    rec = {
        "command": "m3",
        "graph": name,
        "vertices": g.vertex_count,
        "edges": res.total,
        "covered": res.covered,
        "uncovered": res.uncovered,
        "m3": res.ratio(),
        "method": res.method,
        "matchings": res.matchings,
    }
    if not args.no_witness:
        rec["witness"] = _witness(g, res)
    rec["backend"] = kernels.BACKEND
    rec["elapsed_s"] = round(time.perf_counter() - t0, 3)
    return rec


def cmd_m3(args, out: _Out) -> int:
    cap = args.cap
    if args.input:
        if args.family:
            raise InputError("give either --input or --family")
        for g in _read_graphs(args.input):
            t0 = time.perf_counter()
            if args.cross_check:
                raise InputError("--cross-check needs --family (the DP needs the block ring)")
            res = m3(g, method=args.method, cap=cap)
            out.emit(_m3_record(g.name or args.input, g, res, args, t0))
        return EXIT_OK
    if not args.family:
        raise InputError("need --input or --family")
    t0 = time.perf_counter()
    spec = _family_spec(args)
    g = build_family(spec)
    res = m3(spec, method=args.method, cap=cap, cross_check=args.cross_check)
    out.emit(_m3_record(spec.label(), g, res, args, t0))
    return EXIT_OK


def cmd_verify(args, out: _Out) -> int:
    if args.all == bool(args.check):
        raise InputError("give exactly one of --check ID or --all")
    params = {}
    for item in args.params or []:
        key, sep, val = item.partition("=")
        if not sep:
            raise InputError(f"parameter {item!r} is not key=value")
        try:
            params[key] = val if key == "order" else int(val)
        except ValueError:
            raise InputError(f"parameter {key} needs an integer, got {val!r}") from None
    ids = sorted(CHECKS) if args.all else [args.check]
    if args.check and args.check not in CHECKS:
        raise InputError(f"unknown check {args.check!r}; known: {', '.join(sorted(CHECKS))}")
    ok = True
    for cid in ids:
        try:
            rep = check(cid, **(params if args.check else {}))
        except TypeError as exc:
            raise InputError(f"bad parameters for {cid}: {exc}") from exc
        out.emit({"command": "verify", **rep.as_record()})
        ok &= rep.verdict
    return EXIT_OK if ok else EXIT_FAIL


def cmd_analyze(args, out: _Out) -> int:
    if args.input:
        graphs = [(g.name or args.input, g) for g in _read_graphs(args.input)]
    elif args.family:
        spec = _family_spec(args)
        graphs = [(spec.label(), build_family(spec))]
    else:
        raise InputError("need --input or --family")
    wanted = [f for f in ("girth", "cyclic_connectivity", "colorable", "bridgeless") if getattr(args, f)]
    if not wanted:
        wanted = ["girth", "cyclic_connectivity", "colorable", "bridgeless"]
    for name, g in graphs:
        t0 = time.perf_counter()
        rec: dict = {"command": "analyze", "graph": name, "vertices": g.vertex_count, "edges": g.edge_count}
        if "girth" in wanted:
            gr = girth(g)
            rec["girth"] = None if gr == float("inf") else gr
        if "cyclic_connectivity" in wanted:
            res = cyclic_edge_connectivity(g)
            method = "algorithm"
            if g.vertex_count <= ORACLE_MAX_VERTICES:
                oracle = cyclic_connectivity_oracle(g)
                if oracle.value != res.value:
                    raise StructureError(f"oracle {oracle} disagrees with algorithm {res}")
                method = "oracle+algorithm"
            rec["cyclic_connectivity"] = str(res)
            rec["cyclic_connectivity_method"] = method
            rec["cycle_separating_cut"] = [list(g.links[e]) for e in res.witness_cut]
        if "colorable" in wanted:
            rec["colorable"] = is_3_edge_colorable(g)
        if "bridgeless" in wanted:
            rec["bridgeless"] = is_bridgeless(g)
        rec["elapsed_s"] = round(time.perf_counter() - t0, 3)
        out.emit(rec)
    return EXIT_OK


def cmd_ingest(args, out: _Out) -> int:
    try:
        text = Path(args.input).read_text()
    except OSError as exc:
        raise InputError(str(exc)) from exc
    rows = 0
    done = skipped = bad = 0
    for lineno, item in read_graph6_lines(text):
        rows += 1
        t0 = time.perf_counter()
        rec: dict = {"command": "ingest", "line": lineno}
        if isinstance(item, Graph6Error):
            rec.update(status="error", error=str(item))
            bad += 1
            out.emit(rec)
            continue
        g = item
        rec.update(vertices=g.vertex_count, edges=g.edge_count)
        problems = validate(g)
        if problems:
            rec.update(status="error", error="; ".join(problems))
            bad += 1
            out.emit(rec)
            continue
        count = count_perfect_matchings(g)
        rec["matchings"] = count
        try:
            res = m3(g, method="brute", cap=args.cap)
        except CapExceeded:
            rec.update(status="skipped", reason=f"more than {args.cap} perfect matchings")
            skipped += 1
            out.emit(rec)
            continue
        except M3Error as exc:
            rec.update(status="error", error=str(exc))
            bad += 1
            out.emit(rec)
            continue
        flags = []
        if res.covered == res.total:
            flags.append("not a snark")
        if args.min_uncovered is not None and res.uncovered >= args.min_uncovered:
            flags.append(f"uncovered>={args.min_uncovered}")
        rec.update(status="ok", m3=res.ratio(), uncovered=res.uncovered, flags=flags)
        rec["elapsed_s"] = round(time.perf_counter() - t0, 3)
        done += 1
        out.emit(rec)
    out.emit({"command": "ingest", "summary": True, "graphs": rows, "solved": done, "skipped": skipped, "errors": bad})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="m3cover", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("gen", help="generate a family member")
    _add_family_args(p)
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--format", choices=["graph6", "multipole"], default="graph6")
    p.add_argument("--report", help="write the run record here")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("m3", help="compute m3 exactly")
    p.add_argument("--input", help="graph6 or multipole-text file")
    _add_family_args(p)
    p.add_argument("--method", choices=["auto", "brute", "dp"], default="auto")
    p.add_argument("--cross-check", action="store_true", help="run brute force and DP and require agreement")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="perfect-matching limit for brute force")
    p.add_argument("--no-witness", action="store_true")
    p.add_argument("--report", help="write records here instead of stdout")
    p.set_defaults(func=cmd_m3)

    p = sub.add_parser("verify", help="run machine checks")
    p.add_argument("--check", help=f"one of: {', '.join(sorted(CHECKS))}")
    p.add_argument("--params", nargs="*", metavar="KEY=VALUE")
    p.add_argument("--all", action="store_true")
    p.add_argument("--report", help="write records here instead of stdout")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("analyze", help="structural metrics")
    p.add_argument("--input", help="graph6 or multipole-text file")
    _add_family_args(p)
    p.add_argument("--girth", action="store_true")
    p.add_argument("--cyclic-connectivity", action="store_true")
    p.add_argument("--colorable", action="store_true")
    p.add_argument("--bridgeless", action="store_true")
    p.add_argument("--report", help="write records here instead of stdout")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("ingest", help="m3 for every graph in a graph6 list")
    p.add_argument("--input", required=True, help="graph6 file, one graph per line")
    p.add_argument("--report", help="write records here instead of stdout")
    p.add_argument("--min-uncovered", type=int, help="flag graphs with at least K uncovered edges in every triple")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_ingest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Out(getattr(args, "report", None))
    try:
        return args.func(args, out)
    except (InputError, ConstructionError, CapExceeded, M3Error, StructureError) as exc:
        sys.stderr.write(f"m3cover {args.cmd}: error: {exc}\n")
        return EXIT_USAGE
    finally:
        out.close()


if __name__ == "__main__":
    sys.exit(main())

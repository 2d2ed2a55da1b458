"""Command-line front end: search, verify, construct, classify, field-dump.

Summary output is machine-greppable key=value lines.  Exit codes follow
sysexits where applicable: 0 success, 1 failed verification, 2
checkpoint-config mismatch, 64 usage error, 65 malformed input data,
74 I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import Dict, List, Optional, Sequence, Tuple

from hyperfocus.arcs import (
    HYPERFOCUSED,
    ArcError,
    classify_focus,
    diagonal_line,
    double_translation_arc,
    additive_closure,
    is_arc,
    is_exterior,
    translation_arc,
    translation_hyperoval,
)
from hyperfocus.canon import arc_digest, equivalence_classes
from hyperfocus.conics import hyperconic_witness
from hyperfocus.field import GF, FieldError, make_field
from hyperfocus.plane import LINE_AT_INFINITY, all_lines, incident, scale
from hyperfocus.search import (
    COUNTER_KEYS,
    CheckpointMismatch,
    SearchConfig,
    SearchError,
    run_search,
)

EX_OK = 0
EX_FAIL = 1
EX_CHECKPOINT = 2
EX_USAGE = 64
EX_DATA = 65
EX_IO = 74


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would sys.exit(2)
        raise UsageError(message)


def parse_felt(gf: GF, text: str) -> int:
    """Field element literal: decimal, 0x hex, or w^k power notation."""
    t = text.strip()
    if t in ("w", "W"):
        return gf.omega
    m = re.fullmatch(r"[wW]\^(-?\d+)", t)
    if m:
        return gf.element(int(m.group(1)))
    try:
        v = int(t, 0)
    except ValueError:
        raise UsageError(f"bad field element {text!r}") from None
    if not 0 <= v < gf.q:
        raise UsageError(f"element {text!r} outside GF(2^{gf.s})")
    return v


def parse_pairs(gf: GF, text: str) -> List[Tuple[int, int]]:
    """Semicolon-separated list of (x,y) pairs of field elements."""
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        m = re.fullmatch(r"\(([^,()]+),([^,()]+)\)", chunk)
        if not m:
            raise UsageError(f"bad pair {chunk!r}, expected (x,y)")
        out.append((parse_felt(gf, m.group(1)), parse_felt(gf, m.group(2))))
    return out


def _field_from_args(args) -> GF:
    modulus = None
    if args.modulus is not None:
        try:
            modulus = int(args.modulus, 0)
        except ValueError:
            raise UsageError(f"bad modulus {args.modulus!r}") from None
    try:
        return make_field(args.s, modulus)
    except FieldError as exc:
        raise UsageError(str(exc)) from None


def _default_workers() -> int:
    env = os.environ.get("HYPERFOCUS_THREADS")
    if env is None:
        return 1
    try:
        n = int(env)
    except ValueError:
        raise UsageError(f"HYPERFOCUS_THREADS={env!r} is not an integer") from None
    if n < 1:
        raise UsageError("HYPERFOCUS_THREADS must be >= 1")
    return n


def load_records(path: str) -> List[dict]:
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.readlines()
    records = []
    for i, line in enumerate(lines):
        line = line.strip()
        if not line:
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise DataError(f"line {i + 1}: not valid JSON: {exc}") from None
        if not isinstance(rec, dict):
            raise DataError(f"line {i + 1}: record is not an object")
        records.append(rec)
    return records


def _record_field(records: Sequence[dict]) -> GF:
    specs = set()
    for i, rec in enumerate(records):
        try:
            q = int(rec["q"])
            modulus = int(rec["modulus"], 0)
        except (KeyError, TypeError, ValueError) as exc:
            raise DataError(f"record {i}: missing or bad q/modulus: {exc}") from None
        specs.add((q, modulus))
    if len(specs) != 1:
        raise DataError(f"records span several fields: {sorted(specs)}")
    q, modulus = specs.pop()
    s = q.bit_length() - 1
    if 1 << s != q:
        raise DataError(f"q={q} is not a power of two")
    try:
        return make_field(s, modulus)
    except FieldError as exc:
        raise DataError(str(exc)) from None


def _record_points(gf: GF, rec: dict, i: int) -> List[Tuple[int, int, int]]:
    pts = rec.get("points")
    if not isinstance(pts, list) or not pts:
        raise DataError(f"record {i}: missing points")
    out = []
    for p in pts:
        if (
            not isinstance(p, list)
            or len(p) != 3
            or not all(isinstance(x, int) and 0 <= x < gf.q for x in p)
        ):
            raise DataError(f"record {i}: bad point {p!r}")
        if p == [0, 0, 0]:
            raise DataError(f"record {i}: zero triple")
        out.append(scale(gf, p))
    return out


# ---------------------------------------------------------------------------
# subcommands

def cmd_search(args) -> int:
    gf = _field_from_args(args)
    if args.k % 2 or not 10 <= args.k <= 14:
        raise UsageError(
            f"k={args.k} unsupported: the vertical-pair candidate family "
            "needs even k in 10..14"
        )
    config = SearchConfig(
        workers=args.workers,
        checkpoint=args.checkpoint,
        output=args.out,
        engine=args.engine,
        max_shards=args.max_shards,
        progress=args.progress,
    )
    report = run_search(gf, args.k, config)
    print(
        f"search k={report.k} q={report.q} modulus={hex(report.modulus)} "
        f"bounds={report.bounds[0]}..{report.bounds[1]} workers={args.workers}"
    )
    if report.experimental:
        print("experimental=true  # only k=12 and k=14 are validated")
    print(" ".join(f"{key}={report.counters[key]}" for key in COUNTER_KEYS))
    if not report.completed:
        print(f"partial=true cursor={report.cursor} shards_done_upto={report.cursor}")
        return EX_OK
    hyper = sum(1 for rec in report.records if rec["hyperconic"])
    out = f" output={report.output}" if report.output else ""
    print(
        f"found={len(report.found)} hyperconic={hyper}/{len(report.found)} "
        f"elapsed={report.elapsed:.1f}s" + out
    )
    if report.discrepancy:
        print(f"discrepancy: {report.discrepancy}")
    return EX_OK


def cmd_verify(args) -> int:
    records = load_records(args.input)
    if not records:
        print("verified=0/0")
        return EX_OK
    gf = _record_field(records)
    ok = 0
    for i, rec in enumerate(records):
        pts = _record_points(gf, rec, i)
        arc_ok = is_arc(gf, pts)
        line = LINE_AT_INFINITY
        if arc_ok and len(pts) == 4:
            line = diagonal_line(gf, tuple(pts))
        exterior = arc_ok and is_exterior(gf, tuple(pts), line)
        verdict, size = ("-", 0)
        if exterior:
            verdict, size = classify_focus(gf, tuple(pts), line)
        hyper = "-"
        if arc_ok and len(pts) >= 6:
            hyper = str(hyperconic_witness(gf, tuple(pts)).found).lower()
        good = arc_ok and exterior and verdict == HYPERFOCUSED
        ok += good
        print(
            f"arc={i} k={len(pts)} is_arc={str(arc_ok).lower()} "
            f"focus={size} verdict={verdict} hyperconic={hyper} "
            f"ok={str(good).lower()}"
        )
    print(f"verified={ok}/{len(records)}")
    return EX_OK if ok == len(records) else EX_FAIL


def cmd_construct(args) -> int:
    gf = _field_from_args(args)
    if args.kind == "translation":
        if not args.gens:
            raise UsageError("translation needs --gens \"(x,y);(x,y)...\"")
        group = additive_closure(gf, parse_pairs(gf, args.gens))
        try:
            arc = translation_arc(gf, group)
        except ArcError as exc:
            raise UsageError(f"generators do not induce an arc: {exc}") from None
        line = LINE_AT_INFINITY
    elif args.kind == "double":
        if not args.gens or not args.shift:
            raise UsageError("double needs --gens and --shift")
        group = additive_closure(gf, parse_pairs(gf, args.gens))
        (shift,) = parse_pairs(gf, args.shift) or [None]
        try:
            _, arc = double_translation_arc(gf, group, shift)
        except ArcError as exc:
            raise UsageError(f"doubling failed: {exc}") from None
        line = LINE_AT_INFINITY
    elif args.kind == "hyperoval":
        if args.i is None or args.i == 0:
            raise UsageError("hyperoval needs --i >= 1 with gcd(i, s) = 1")
        try:
            arc = translation_hyperoval(gf, args.i)
        except ArcError as exc:
            raise UsageError(str(exc)) from None
        line = None
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown construction {args.kind!r}")

    rec: Dict[str, object] = {
        "q": gf.q,
        "modulus": hex(gf.modulus),
        "k": len(arc),
        "points": [list(p) for p in arc],
        "digest": arc_digest(gf, arc) if line is not None else None,
        "construction": args.kind,
    }
    if line is not None:
        verdict, size = classify_focus(gf, arc, line)
        if verdict != HYPERFOCUSED:
            raise DataError(f"construction is not hyperfocused: {verdict}")
        rec["line"] = list(line)
        rec["focus_count"] = size
    else:
        # hyperovals are hyperfocused on every exterior line; sample a few
        sampled = 0
        for m in all_lines(gf):
            if any(incident(gf, p, m) for p in arc):
                continue
            verdict, size = classify_focus(gf, arc, m)
            if verdict != HYPERFOCUSED or size != gf.q + 1:
                raise DataError(f"hyperoval fails on line {m}")
            sampled += 1
            if sampled == 5:
                break
        rec["sampled_exterior_lines"] = sampled
        rec["focus_count"] = gf.q + 1
    line_out = json.dumps(rec, sort_keys=True, separators=(",", ":"))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(line_out + "\n")
    print(line_out)
    return EX_OK


def cmd_classify(args) -> int:
    records = load_records(args.input)
    if not records:
        print("classes=0 arcs=0")
        return EX_OK
    gf = _record_field(records)
    lines = set()
    for i, rec in enumerate(records):
        if "line" in rec:
            lines.add(tuple(rec["line"]))
    if lines - {tuple(LINE_AT_INFINITY)}:
        raise DataError(f"records carry mixed focus lines: {sorted(lines)}")
    seen: Dict[Tuple, None] = {}
    for i, rec in enumerate(records):
        pts = _record_points(gf, rec, i)
        if not is_arc(gf, pts):
            raise DataError(f"record {i} is not an arc")
        if not is_exterior(gf, tuple(pts), LINE_AT_INFINITY):
            raise DataError(f"record {i} meets the focus line")
        seen.setdefault(tuple(sorted(pts)), None)
    arcs = [tuple(pts) for pts in seen]
    classes = equivalence_classes(gf, arcs)
    print(f"classes={len(classes)} arcs={len(arcs)}")
    for ci, (dig, members) in enumerate(classes):
        print(f"class={ci} size={len(members)} digest={dig}")
    return EX_OK


def cmd_field_dump(args) -> int:
    gf = _field_from_args(args)
    print(f"s={gf.s} q={gf.q} modulus={hex(gf.modulus)} omega={gf.omega}")
    for i in range(gf.q - 1):
        v = gf.element(i)
        print(f"i={i} w^i={v} hex={v:#x}")
    return EX_OK


# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    p = _Parser(prog="hyperfocus", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add_field_args(sp):
        sp.add_argument("--s", type=int, required=True, help="field degree")
        sp.add_argument("--modulus", default=None, help="irreducible polynomial")

    sp = sub.add_parser("search", help="run the classification pipeline")
    add_field_args(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--out", default=None)
    sp.add_argument("--checkpoint", default=None)
    sp.add_argument("--workers", type=int, default=None)
    sp.add_argument("--engine", choices=("auto", "numpy", "python"), default="auto")
    sp.add_argument("--max-shards", type=int, default=None)
    sp.add_argument("--progress", action="store_true")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("verify", help="re-check stored arc records")
    sp.add_argument("input")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("construct", help="emit a known construction")
    add_field_args(sp)
    sp.add_argument("kind", choices=("translation", "double", "hyperoval"))
    sp.add_argument("--gens", default=None)
    sp.add_argument("--shift", default=None)
    sp.add_argument("--i", type=int, default=None)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("classify", help="group stored arcs into classes")
    sp.add_argument("input")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("field-dump", help="print the field's power table")
    add_field_args(sp)
    sp.set_defaults(func=cmd_field_dump)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "workers", None) is None and args.command == "search":
            args.workers = _default_workers()
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EX_USAGE
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EX_DATA
    except CheckpointMismatch as exc:
        print(f"checkpoint mismatch: {exc}", file=sys.stderr)
        return EX_CHECKPOINT
    except SearchError as exc:
        print(f"search error: {exc}", file=sys.stderr)
        return EX_USAGE
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EX_IO


if __name__ == "__main__":
    sys.exit(main())

"""Search pipelines for hyperfocused 12- and 14-arcs on Z=0.

The candidate family is the normalized 8-point configuration

    K0 = {(0,0), (0,1), (1,0), (1,a), (c,d), (c,e), (f,g), (f,h)}

in affine coordinates (third coordinate 1), four vertical pairs, with a
ranging over Frobenius orbit representatives and the ordering
constraints 1 < c < f, d < e, g < h removing within-frame duplicates.
Candidates surviving the arc and focus-count filters are extended by
4- or 6-point transversals of tangent-pencil grids, and every emitted
arc is re-verified from the definition.

Work is sharded by the (a-index, c) prefix.  Shards are merged in a
fixed order and the final records are sorted by canonical digest, so
worker count never affects the output file.  A JSON checkpoint stores
the last completed shard, cumulative counters, and the arcs found so
far; resuming reproduces the same bytes.

Restricting a to orbit representatives finds one arc per Frobenius
orbit; the reported result is the orbit closure, i.e. every
hyperfocused k-arc through the normalized frame, since the Frobenius
collineation fixes the frame and the focus line.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import os
import sys
import time
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from hyperfocus.arcs import HYPERFOCUSED, Arc, classify_focus, make_arc
from hyperfocus.canon import arc_digest, frobenius_orbit_reps, serialize_arc
from hyperfocus.conics import hyperconic_witness
from hyperfocus.field import GF, make_field
from hyperfocus.plane import (
    LINE_AT_INFINITY,
    Point,
    frobenius_point,
    point_index,
    scale,
)

try:
    import numpy as _np
except ImportError:  # pragma: no cover
    _np = None

NOT_AN_ARC = "not-an-arc"
FOCUS_COUNT = "focus-count"

# target size -> (min, max) focus count demanded of the 8-point stage
FOCUS_BOUNDS = {10: (9, 9), 12: (11, 11), 14: (9, 13)}

# classification results the full runs are expected to reproduce
EXPECTED_FOUND = {(32, 0x25, 12): 60, (32, 0x25, 14): 0}

COUNTER_KEYS = (
    "candidates",
    "arcs8",
    "focus_rejected",
    "focus_9_10",
    "prepared",
    "extended",
    "closure_survivors",
    "closure_extended",
    "orbit_reps",
    "found",
    "verified",
)


class SearchError(Exception):
    pass


class CheckpointMismatch(SearchError):
    """Checkpoint belongs to a different search configuration."""


@dataclass(frozen=True)
class Candidate8:
    """Seven field elements naming an 8-point candidate configuration."""

    a: int
    c: int
    d: int
    e: int
    f: int
    g: int
    h: int

    def points(self) -> Tuple[Tuple[int, int], ...]:
        """The implied affine point set, third coordinate 1."""
        return (
            (0, 0),
            (0, 1),
            (1, 0),
            (1, self.a),
            (self.c, self.d),
            (self.c, self.e),
            (self.f, self.g),
            (self.f, self.h),
        )


@dataclass(frozen=True)
class Prepared8:
    """A candidate that passed the arc and focus-count filters.

    `focus` and `tangent_pencils` are the projective views consumed by
    callers; the affine fields drive the extension stage.  The slope
    index of a focus is its y/x ratio, with index q for the vertical
    direction (0,1,0).
    """

    cand: Candidate8
    arc: Arc
    focus: Tuple[Point, ...]
    tangent_pencils: Dict[Point, Tuple[Tuple[int, int, int], ...]]
    apts: Tuple[Tuple[int, int], ...]
    focus_mask: int
    slope_counts: Tuple[int, ...]

    @property
    def focus_size(self) -> int:
        return self.focus_mask.bit_count()


def new_counters() -> Dict[str, int]:
    return {k: 0 for k in COUNTER_KEYS}


def merge_counters(into: Dict[str, int], delta: Dict[str, int]) -> None:
    for k, v in delta.items():
        into[k] = into.get(k, 0) + v


# ---------------------------------------------------------------------------
# candidate stream

def shard_list(gf: GF) -> List[Tuple[int, int]]:
    """All (a-index, c) shard coordinates in processing order."""
    reps = frobenius_orbit_reps(gf, exclude=frozenset({0}))
    return [(i, c) for i in range(len(reps)) for c in range(2, gf.q)]


def shard_size(gf: GF, c: int) -> int:
    """Closed-form candidate count of one (a, c) shard."""
    pairs = gf.q * (gf.q - 1) // 2
    return pairs * (gf.q - 1 - c) * pairs


def shard_candidates(gf: GF, a: int, c: int) -> Iterator[Candidate8]:
    q = gf.q
    for d in range(q):
        for e in range(d + 1, q):
            for f in range(c + 1, q):
                for g in range(q):
                    for h in range(g + 1, q):
                        yield Candidate8(a, c, d, e, f, g, h)


def enumerate_candidates8(gf: GF) -> Iterator[Candidate8]:
    """Full candidate stream, lexicographic in (a, c, d, e, f, g, h)."""
    reps = frobenius_orbit_reps(gf, exclude=frozenset({0}))
    for a in reps:
        for c in range(2, gf.q):
            yield from shard_candidates(gf, a, c)


# ---------------------------------------------------------------------------
# affine predicates

def slope_index(gf: GF, p: Tuple[int, int], r: Tuple[int, int]) -> int:
    """Secant direction of two affine points: slope, or q when vertical."""
    if p[0] == r[0]:
        return gf.q
    return gf.mul(p[1] ^ r[1], gf.inv(p[0] ^ r[0]))


def _is_affine_arc(gf: GF, pts: Sequence[Tuple[int, int]]) -> bool:
    # three points are collinear iff two of the pairs through the first
    # share a direction, so scanning each anchor point's slope multiset
    # catches every collinear triple at its least index
    if len(set(pts)) != len(pts):
        return False
    for i, p in enumerate(pts):
        seen = set()
        for r in pts[i + 1:]:
            m = slope_index(gf, p, r)
            if m in seen:
                return False
            seen.add(m)
    return True


def _slope_census(gf: GF, pts: Sequence[Tuple[int, int]]) -> Tuple[int, List[int]]:
    """Focus bitmask over slope indices 0..q and per-index secant counts."""
    counts = [0] * (gf.q + 1)
    mask = 0
    for i, p in enumerate(pts):
        for r in pts[i + 1:]:
            m = slope_index(gf, p, r)
            counts[m] += 1
            mask |= 1 << m
    return mask, counts


def focus_point(gf: GF, m: int) -> Point:
    """The point of Z=0 with slope index m."""
    if m == gf.q:
        return (0, 1, 0)
    return scale(gf, (1, m, 0))


def _tangents_of_slope(
    gf: GF, pts: Sequence[Tuple[int, int]], m: int
) -> List[Tuple[int, int, int]]:
    """Tangent lines through the slope-m focus, as projective lines."""
    buckets: Dict[int, int] = {}
    for x, y in pts:
        b = x if m == gf.q else (y ^ gf.mul(m, x))
        buckets[b] = buckets.get(b, 0) + 1
    out = []
    for b in sorted(buckets):
        if buckets[b] == 1:
            raw = (1, 0, b) if m == gf.q else (m, 1, b)
            out.append(scale(gf, raw))
    return out


def prune8(gf: GF, cand: Candidate8, bounds: Tuple[int, int]):
    """Validate one candidate; returns Prepared8 or a rejection reason."""
    pts = cand.points()
    if not _is_affine_arc(gf, pts):
        return NOT_AN_ARC
    mask, counts = _slope_census(gf, pts)
    size = mask.bit_count()
    lo, hi = bounds
    if not lo <= size <= hi:
        return FOCUS_COUNT
    arc = make_arc(gf, [(x, y, 1) for x, y in pts])
    focus_ms = [m for m in range(gf.q + 1) if counts[m]]
    focus = tuple(
        sorted((focus_point(gf, m) for m in focus_ms), key=lambda p: point_index(gf, p))
    )
    pencils = {
        focus_point(gf, m): tuple(_tangents_of_slope(gf, pts, m)) for m in focus_ms
    }
    for star in ((0, 1, 0), (1, 1, 0), (1, 0, 0)):
        if star not in pencils:
            raise SearchError(f"frame focus {star} missing from {cand}")
    return Prepared8(cand, arc, focus, pencils, pts, mask, tuple(counts))


# ---------------------------------------------------------------------------
# stream filtering, reference path

def _anchor_cross_lines(gf: GF, a: int) -> List[Tuple[int, int]]:
    # non-vertical lines through two of the four anchor points, as (m, b)
    return [(0, 0), (a, 0), (1, 1), (a ^ 1, 1)]


def _stream_shard_python(
    gf: GF,
    a: int,
    c: int,
    lo: int,
    hi: int,
    de_pairs: Optional[Sequence[Tuple[int, int]]] = None,
) -> Tuple[Dict[str, int], List[Candidate8]]:
    """Brute-force shard filter: per-candidate arc test and slope census.

    Exact but slow; it is the oracle the vectorized path is checked
    against, and the fallback engine when numpy is unavailable.
    """
    q = gf.q
    counters = new_counters()
    survivors: List[Candidate8] = []
    pairs = (
        list(de_pairs)
        if de_pairs is not None
        else [(d, e) for d in range(q) for e in range(d + 1, q)]
    )
    counters["candidates"] = len(pairs) * (q - 1 - c) * (q * (q - 1) // 2)
    for d, e in pairs:
        for f in range(c + 1, q):
            for g in range(q):
                for h in range(g + 1, q):
                    cand = Candidate8(a, c, d, e, f, g, h)
                    pts = cand.points()
                    if not _is_affine_arc(gf, pts):
                        continue
                    counters["arcs8"] += 1
                    mask, _ = _slope_census(gf, pts)
                    size = mask.bit_count()
                    if size in (9, 10):
                        counters["focus_9_10"] += 1
                    if lo <= size <= hi:
                        counters["prepared"] += 1
                        survivors.append(cand)
                    else:
                        counters["focus_rejected"] += 1
    return counters, survivors


# ---------------------------------------------------------------------------
# stream filtering, vectorized path

class _NumpyTables:
    """Per-field lookup tables for the vectorized shard filter."""

    def __init__(self, gf: GF):
        if _np is None:
            raise SearchError("numpy is not available")
        if not hasattr(_np, "bitwise_count"):
            raise SearchError("numpy lacks bitwise_count")
        if gf.q >= 64:
            raise SearchError("slope bitmasks need q < 64")
        q = gf.q
        mul = _np.zeros((q, q), dtype=_np.int64)
        for x in range(1, q):
            for y in range(1, q):
                mul[x, y] = gf.mul(x, y)
        slope = _np.full((q, q), q, dtype=_np.int64)
        for dx in range(1, q):
            inv = gf.inv(dx)
            for dy in range(q):
                slope[dx, dy] = gf.mul(dy, inv)
        self.q = q
        self.mul = mul
        self.slope_bit = (_np.uint64(1) << slope.astype(_np.uint64))
        self.triu = _np.triu(_np.ones((q, q), dtype=bool), 1)
        self.xs = _np.arange(q)


def _stream_shard_numpy(
    gf: GF,
    tab: _NumpyTables,
    a: int,
    c: int,
    lo: int,
    hi: int,
    de_pairs: Optional[Sequence[Tuple[int, int]]] = None,
) -> Tuple[Dict[str, int], List[Candidate8]]:
    """Vectorized shard filter over the (f, g, h) cube per (d, e) pair.

    For fixed (a, c, d, e) the 28 secant directions of a candidate split
    into the 15 directions among the six fixed points and, for each new
    point (f, g) / (f, h), its six directions to the fixed points plus
    the shared vertical.  OR-ing precomputed slope bitmasks gives the
    focus set of every candidate in the cube at once, and a candidate
    is an arc iff d, e avoid the anchor lines over x=c and g, h avoid
    the 12 cross-secant traces over the row's x=f.
    """
    np = _np
    q = tab.q
    counters = new_counters()
    survivors: List[Candidate8] = []
    pairs = (
        list(de_pairs)
        if de_pairs is not None
        else [(d, e) for d in range(q) for e in range(d + 1, q)]
    )
    counters["candidates"] = len(pairs) * (q - 1 - c) * (q * (q - 1) // 2)

    anchors = ((0, 0), (0, 1), (1, 0), (1, a))
    anchor_lines = _anchor_cross_lines(gf, a)
    forb_de = {gf.mul(m, c) ^ b for m, b in anchor_lines}
    vert_bit = 1 << q
    base4 = vert_bit
    for m, _b in anchor_lines:
        base4 |= 1 << m

    xs = tab.xs
    frow = (xs > c)[:, None, None]
    sb = tab.slope_bit
    lo_u = np.uint8(lo)
    hi_u = np.uint8(hi)

    for d, e in pairs:
        if d in forb_de or e in forb_de:
            continue
        pts6 = anchors + ((c, d), (c, e))
        base6 = base4
        lines12 = list(anchor_lines)
        for y0 in (d, e):
            for ax, ay in anchors:
                m = gf.mul(y0 ^ ay, gf.inv(c ^ ax))
                base6 |= 1 << m
                lines12.append((m, ay ^ gf.mul(m, ax)))
        forb = np.zeros((q, q), dtype=bool)
        for m, b in lines12:
            forb[xs, tab.mul[m] ^ b] = True
        r = np.zeros((q, q), dtype=np.uint64)
        for px, py in pts6:
            r |= sb[xs[:, None] ^ px, xs[None, :] ^ py]
        masks = np.uint64(base6) | r[:, :, None] | r[:, None, :]
        cnt = np.bitwise_count(masks).astype(np.uint8)
        ok = ~forb
        arcs = frow & ok[:, :, None] & ok[:, None, :] & tab.triu[None, :, :]
        n_arcs = int(arcs.sum())
        counters["arcs8"] += n_arcs
        counters["focus_9_10"] += int((arcs & ((cnt == 9) | (cnt == 10))).sum())
        sel = arcs & (cnt >= lo_u) & (cnt <= hi_u)
        n_sel = int(sel.sum())
        counters["prepared"] += n_sel
        counters["focus_rejected"] += n_arcs - n_sel
        if n_sel:
            for f, g, h in np.argwhere(sel):
                survivors.append(Candidate8(a, c, d, e, int(f), int(g), int(h)))
    return counters, survivors


def stream_shard(
    gf: GF,
    a: int,
    c: int,
    lo: int,
    hi: int,
    engine: str = "auto",
    de_pairs: Optional[Sequence[Tuple[int, int]]] = None,
    tables: Optional[_NumpyTables] = None,
) -> Tuple[Dict[str, int], List[Candidate8]]:
    engine = resolve_engine(gf, engine)
    if engine == "numpy":
        tab = tables if tables is not None else _NumpyTables(gf)
        return _stream_shard_numpy(gf, tab, a, c, lo, hi, de_pairs)
    return _stream_shard_python(gf, a, c, lo, hi, de_pairs)


def resolve_engine(gf: GF, engine: str) -> str:
    if engine == "auto":
        usable = _np is not None and hasattr(_np, "bitwise_count") and gf.q < 64
        return "numpy" if usable else "python"
    if engine not in ("numpy", "python"):
        raise SearchError(f"unknown engine {engine!r}")
    return engine


# ---------------------------------------------------------------------------
# extension stage

def _secant_traces(gf: GF, pts: Sequence[Tuple[int, int]]) -> set:
    """Every affine point lying on a secant of the given points."""
    q = gf.q
    covered = set()
    for i, p in enumerate(pts):
        for r in pts[i + 1:]:
            if p[0] == r[0]:
                covered.update((p[0], y) for y in range(q))
            else:
                m = gf.mul(p[1] ^ r[1], gf.inv(p[0] ^ r[0]))
                b = p[1] ^ gf.mul(m, p[0])
                covered.update((x, gf.mul(m, x) ^ b) for x in range(q))
    return covered


def _tangent_intercepts(gf: GF, pts: Sequence[Tuple[int, int]], m: int) -> List[int]:
    buckets: Dict[int, int] = {}
    for x, y in pts:
        b = y ^ gf.mul(m, x)
        buckets[b] = buckets.get(b, 0) + 1
    return sorted(b for b, n in buckets.items() if n == 1)


class _CellInfo:
    __slots__ = ("x", "y", "dirs", "mask")

    def __init__(self, gf: GF, pts8, x: int, y: int):
        self.x = x
        self.y = y
        self.dirs = tuple(slope_index(gf, (x, y), p) for p in pts8)
        mask = 0
        for m in self.dirs:
            mask |= 1 << m
        self.mask = mask


def _collinear_affine(gf: GF, p, r, t) -> bool:
    if p[0] == r[0]:
        return t[0] == p[0]
    m = gf.mul(p[1] ^ r[1], gf.inv(p[0] ^ r[0]))
    b = p[1] ^ gf.mul(m, p[0])
    return t[1] == (gf.mul(m, t[0]) ^ b)


def _finish_extension(
    gf: GF, prep: Prepared8, chosen: Sequence[_CellInfo], k: int
) -> Optional[Tuple[Point, ...]]:
    """Full from-scratch acceptance check of an extension candidate."""
    new_pts = [(cell.x, cell.y) for cell in chosen]
    pts = list(prep.apts) + new_pts
    if not _is_affine_arc(gf, pts):
        return None
    mask, _ = _slope_census(gf, pts)
    if mask.bit_count() != k - 1:
        return None
    # growth is monotone, so the k-arc focus set must contain the 8-arc's
    assert mask & prep.focus_mask == prep.focus_mask
    # no two added points may share a tangent of the 8-arc: their join
    # must miss it entirely (one common point would be a collinear triple)
    for u, v in itertools.combinations(new_pts, 2):
        assert not any(_collinear_affine(gf, u, v, w) for w in prep.apts)
    return make_arc(gf, [(x, y, 1) for x, y in pts])


def _grid_transversals(
    gf: GF, prep: Prepared8, m1: int, m2: int, n_add: int, k: int
) -> List[Tuple[Point, ...]]:
    """Extensions for one pair of tangent pencils.

    Rows are the tangents of the slope-m1 pencil, columns those of the
    slope-m2 pencil; cell (i, j) is their intersection.  Each added
    point must lie on exactly one tangent of each pencil, so the added
    set is an injective row-to-column assignment, searched depth-first
    with incremental focus-count and collinearity pruning.
    """
    pts8 = prep.apts
    t1 = _tangent_intercepts(gf, pts8, m1)
    t2 = _tangent_intercepts(gf, pts8, m2)
    if len(t1) != n_add or len(t2) != n_add:
        raise SearchError("pencil size does not match the extension width")
    covered = _secant_traces(gf, pts8)
    dm_inv = gf.inv(m1 ^ m2)
    cells: List[List[Optional[_CellInfo]]] = []
    for b1 in t1:
        row = []
        for b2 in t2:
            x = gf.mul(b1 ^ b2, dm_inv)
            y = gf.mul(m1, x) ^ b1
            row.append(None if (x, y) in covered else _CellInfo(gf, pts8, x, y))
        cells.append(row)
    out: List[Tuple[Point, ...]] = []
    hi_mask = k - 1
    chosen: List[_CellInfo] = []

    def walk(i: int, used: int, fmask: int) -> None:
        if i == n_add:
            arc = _finish_extension(gf, prep, chosen, k)
            if arc is not None:
                out.append(arc)
            return
        for j in range(n_add):
            if used & (1 << j):
                continue
            cell = cells[i][j]
            if cell is None:
                continue
            nmask = fmask | cell.mask
            ok = True
            col = 0
            for prev in chosen:
                m = slope_index(gf, (cell.x, cell.y), (prev.x, prev.y))
                nmask |= 1 << m
                if m == gf.q:
                    col += 1
            if col > 1:
                ok = False
            if ok and nmask.bit_count() > hi_mask:
                ok = False
            if ok:
                for u, v in itertools.combinations(chosen, 2):
                    if _collinear_affine(
                        gf, (u.x, u.y), (v.x, v.y), (cell.x, cell.y)
                    ):
                        ok = False
                        break
            if ok:
                for prev in chosen:
                    if any(
                        _collinear_affine(gf, (cell.x, cell.y), (prev.x, prev.y), w)
                        for w in pts8
                    ):
                        ok = False
                        break
            if ok:
                chosen.append(cell)
                walk(i + 1, used | (1 << j), nmask)
                chosen.pop()

    walk(0, 0, prep.focus_mask)
    return out


def _extend_grid(gf: GF, prep: Prepared8, n_add: int) -> List[Tuple[Point, ...]]:
    k = 8 + n_add
    want = (8 - n_add) // 2
    pencil_ms = [m for m in range(gf.q + 1) if prep.slope_counts[m] == want]
    if len(pencil_ms) < 2:
        return []
    found: Dict[Tuple[Point, ...], None] = {}
    for m1, m2 in itertools.combinations(pencil_ms, 2):
        for arc in _grid_transversals(gf, prep, m1, m2, n_add, k):
            found.setdefault(arc, None)
    return sorted(found, key=lambda a: serialize_arc(gf, a))


def extend_to_12(gf: GF, prep: Prepared8) -> List[Tuple[Point, ...]]:
    """All hyperfocused 12-arcs over the 4x4 grids of 4-tangent focus pairs."""
    return _extend_grid(gf, prep, 4)


def extend_to_14(gf: GF, prep: Prepared8) -> List[Tuple[Point, ...]]:
    """All hyperfocused 14-arcs over the 6x6 grids of 6-tangent focus pairs."""
    return _extend_grid(gf, prep, 6)


def closure_completions(gf: GF, prep: Prepared8) -> List[Tuple[Point, ...]]:
    """Direct 14-arc completions of an 8-arc whose focus set has 13 points.

    A hyperfocused 14-arc containing the 8 points has the same focus
    set (pigeonhole over its 7 pairs per focus), so the 6 added points
    form 3 new vertical pairs whose every secant direction to the 8-arc
    and to each other lies in the known focus mask.  This closes the
    rare case of fewer than two 6-tangent focuses, where the grid
    search has nothing to enumerate.
    """
    q = gf.q
    if prep.focus_mask.bit_count() != 13:
        return []
    pts8 = prep.apts
    fmask = prep.focus_mask
    covered = _secant_traces(gf, pts8)
    used_x = {x for x, _ in pts8}
    col_pairs: List[Tuple[int, List[Tuple[int, int]]]] = []
    for x in range(q):
        if x in used_x:
            continue
        ys = [
            y
            for y in range(q)
            if (x, y) not in covered
            and all((1 << slope_index(gf, (x, y), p)) & fmask for p in pts8)
        ]
        pairs = [(y1, y2) for y1, y2 in itertools.combinations(ys, 2)]
        if pairs:
            col_pairs.append((x, pairs))
    out: Dict[Tuple[Point, ...], None] = {}
    chosen: List[Tuple[int, int]] = []

    def compatible(p: Tuple[int, int]) -> bool:
        for r in chosen:
            if not (1 << slope_index(gf, p, r)) & fmask:
                return False
            if any(_collinear_affine(gf, p, r, w) for w in pts8):
                return False
        for u, v in itertools.combinations(chosen, 2):
            if _collinear_affine(gf, u, v, p):
                return False
        return True

    def walk(start: int, depth: int) -> None:
        if depth == 3:
            pts = list(pts8) + chosen
            if not _is_affine_arc(gf, pts):
                return
            mask, _ = _slope_census(gf, pts)
            if mask.bit_count() == 13:
                out.setdefault(make_arc(gf, [(x, y, 1) for x, y in pts]), None)
            return
        for ci in range(start, len(col_pairs)):
            x, pairs = col_pairs[ci]
            for y1, y2 in pairs:
                if not compatible((x, y1)):
                    continue
                chosen.append((x, y1))
                if compatible((x, y2)):
                    chosen.append((x, y2))
                    walk(ci + 1, depth + 1)
                    chosen.pop()
                chosen.pop()

    walk(0, 0)
    return sorted(out, key=lambda a: serialize_arc(gf, a))


# ---------------------------------------------------------------------------
# shard processing

def process_shard(
    gf: GF,
    k: int,
    a: int,
    c: int,
    engine: str,
    tables: Optional[_NumpyTables] = None,
) -> Tuple[Dict[str, int], List[Tuple[Point, ...]]]:
    """Filter and extend one (a, c) shard; returns counters and raw arcs."""
    lo, hi = FOCUS_BOUNDS[k]
    counters, survivors = stream_shard(
        gf, a, c, lo, hi, engine=engine, tables=tables
    )
    n_add = k - 8
    raw: List[Tuple[Point, ...]] = []
    for cand in survivors:
        prep = prune8(gf, cand, (lo, hi))
        if not isinstance(prep, Prepared8):
            raise SearchError(f"stream survivor failed revalidation: {cand}")
        arcs = _extend_grid(gf, prep, n_add)
        counters["extended"] += len(arcs)
        raw.extend(arcs)
        if k == 14:
            six = sum(1 for n in prep.slope_counts if n == 1)
            if prep.focus_size == 13 and six < 2:
                counters["closure_survivors"] += 1
                extra = closure_completions(gf, prep)
                counters["closure_extended"] += len(extra)
                raw.extend(extra)
    return counters, raw


# ---------------------------------------------------------------------------
# orchestration

@dataclass
class SearchConfig:
    workers: int = 1
    checkpoint: Optional[str] = None
    output: Optional[str] = None
    engine: str = "auto"
    max_shards: Optional[int] = None
    progress: bool = False


@dataclass
class SearchReport:
    k: int
    q: int
    modulus: int
    bounds: Tuple[int, int]
    counters: Dict[str, int]
    found: List[Tuple[Point, ...]]
    records: List[dict]
    output: Optional[str]
    cursor: Optional[Tuple[int, int]]
    completed: bool
    experimental: bool
    discrepancy: Optional[str]
    elapsed: float = 0.0


def config_hash(gf: GF, k: int, bounds: Tuple[int, int]) -> str:
    blob = json.dumps(
        {"q": gf.q, "modulus": gf.modulus, "k": k, "lo": bounds[0], "hi": bounds[1]},
        sort_keys=True,
    )
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _atomic_write(path: str, data: str) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(data)
    os.replace(tmp, path)


def _save_checkpoint(
    path: str,
    digest: str,
    cursor: Tuple[int, int],
    counters: Dict[str, int],
    found: List[Tuple[Point, ...]],
) -> None:
    blob = {
        "config_hash": digest,
        "cursor": list(cursor),
        "counters": counters,
        "found": [[list(p) for p in arc] for arc in found],
    }
    _atomic_write(path, json.dumps(blob, sort_keys=True))


def _load_checkpoint(path: str, digest: str):
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.read()
    try:
        blob = json.loads(raw)
        if blob.get("config_hash") != digest:
            raise CheckpointMismatch(
                f"checkpoint {path} was written by a different configuration"
            )
        cursor = (int(blob["cursor"][0]), int(blob["cursor"][1]))
        counters = new_counters()
        counters.update({k: int(v) for k, v in blob["counters"].items()})
        found = [tuple(tuple(int(x) for x in p) for p in arc) for arc in blob["found"]]
    except (json.JSONDecodeError, KeyError, IndexError, TypeError) as exc:
        raise CheckpointMismatch(f"corrupt checkpoint {path}: {exc}") from exc
    return cursor, counters, found


_WORKER: Dict[str, object] = {}


def _worker_init(s: int, modulus: int, k: int, engine: str) -> None:
    gf = make_field(s, modulus)
    _WORKER["gf"] = gf
    _WORKER["k"] = k
    _WORKER["engine"] = engine
    _WORKER["tables"] = _NumpyTables(gf) if engine == "numpy" else None


def _worker_shard(coords: Tuple[int, int]):
    gf: GF = _WORKER["gf"]  # type: ignore[assignment]
    reps = frobenius_orbit_reps(gf, exclude=frozenset({0}))
    a_idx, c = coords
    counters, raw = process_shard(
        gf,
        _WORKER["k"],  # type: ignore[arg-type]
        reps[a_idx],
        c,
        _WORKER["engine"],  # type: ignore[arg-type]
        _WORKER["tables"],  # type: ignore[arg-type]
    )
    return a_idx, c, counters, raw


def _postprocess(
    gf: GF, k: int, found_raw: List[Tuple[Point, ...]], counters: Dict[str, int]
) -> Tuple[List[Tuple[Point, ...]], List[dict]]:
    reps_found: Dict[Tuple[Point, ...], None] = {}
    for arc in found_raw:
        reps_found.setdefault(tuple(tuple(p) for p in arc), None)
    counters["orbit_reps"] = len(reps_found)
    # the stream fixes the fourth frame ordinate to a Frobenius orbit
    # representative; the full family of frame-normalized arcs is the
    # orbit closure (Frobenius fixes the frame and the focus line)
    unique: Dict[Tuple[Point, ...], None] = {}
    for arc in reps_found:
        for i in range(gf.s):
            img = make_arc(gf, [frobenius_point(gf, p, i) for p in arc])
            unique.setdefault(img, None)
    entries = []
    for pts in unique:
        arc = make_arc(gf, pts)
        verdict, size = classify_focus(gf, arc, LINE_AT_INFINITY)
        if len(arc) != k or verdict != HYPERFOCUSED or size != k - 1:
            raise SearchError(f"emitted arc fails verification: {pts}")
        counters["verified"] += 1
        wit = hyperconic_witness(gf, arc)
        record = {
            "q": gf.q,
            "modulus": hex(gf.modulus),
            "k": k,
            "points": [list(p) for p in arc],
            "digest": arc_digest(gf, arc),
            "focus_count": size,
            "hyperconic": wit.found,
            "conic": list(wit.conic) if wit.found else None,
            "nucleus": list(wit.nucleus) if wit.found else None,
        }
        entries.append((record["digest"], serialize_arc(gf, arc), arc, record))
    entries.sort(key=lambda t: (t[0], t[1]))
    records = []
    arcs = []
    for i, (_, _, arc, record) in enumerate(entries):
        record["arc_id"] = i
        records.append(record)
        arcs.append(arc)
    counters["found"] = len(arcs)
    return arcs, records


def run_search(gf: GF, k: int, config: SearchConfig) -> SearchReport:
    """Stream, prune, extend, verify, dedupe, canonicalize, write JSONL."""
    t0 = time.monotonic()
    if k % 2 or not 10 <= k <= 14:
        raise SearchError(f"k={k} is not supported (even k in 10..14)")
    bounds = FOCUS_BOUNDS[k]
    engine = resolve_engine(gf, config.engine)
    digest = config_hash(gf, k, bounds)
    shards = shard_list(gf)
    counters = new_counters()
    found_raw: List[Tuple[Point, ...]] = []
    done = 0
    if config.checkpoint and os.path.exists(config.checkpoint):
        cursor, counters, found_raw = _load_checkpoint(config.checkpoint, digest)
        try:
            done = shards.index(cursor) + 1
        except ValueError as exc:
            raise CheckpointMismatch(f"checkpoint cursor {cursor} unknown") from exc
    todo = shards[done:]
    if config.max_shards is not None:
        todo = todo[: config.max_shards]

    reps = frobenius_orbit_reps(gf, exclude=frozenset({0}))
    workers = max(1, int(config.workers))

    def handle(a_idx: int, c: int, delta: Dict[str, int], raw) -> None:
        nonlocal done
        merge_counters(counters, delta)
        found_raw.extend(tuple(tuple(p) for p in arc) for arc in raw)
        done += 1
        if config.checkpoint:
            _save_checkpoint(
                config.checkpoint, digest, (a_idx, c), counters, found_raw
            )
        if config.progress:
            print(
                f"shard a_idx={a_idx} c={c} prepared={counters['prepared']} "
                f"raw={len(found_raw)}",
                file=sys.stderr,
                flush=True,
            )

    if workers == 1 or len(todo) <= 1:
        tables = _NumpyTables(gf) if engine == "numpy" else None
        for a_idx, c in todo:
            delta, raw = process_shard(gf, k, reps[a_idx], c, engine, tables)
            handle(a_idx, c, delta, raw)
    else:
        with Pool(
            processes=min(workers, len(todo)),
            initializer=_worker_init,
            initargs=(gf.s, gf.modulus, k, engine),
        ) as pool:
            for a_idx, c, delta, raw in pool.imap(_worker_shard, todo):
                handle(a_idx, c, delta, raw)

    completed = done == len(shards)
    cursor = shards[done - 1] if done else None
    arcs: List[Tuple[Point, ...]] = []
    records: List[dict] = []
    discrepancy = None
    if completed:
        arcs, records = _postprocess(gf, k, found_raw, counters)
        expected = EXPECTED_FOUND.get((gf.q, gf.modulus, k))
        if expected is not None and len(arcs) != expected:
            discrepancy = (
                f"expected {expected} hyperfocused {k}-arcs for q={gf.q}, "
                f"found {len(arcs)}; counters: "
                + " ".join(f"{key}={counters[key]}" for key in COUNTER_KEYS)
            )
        if config.output:
            lines = [
                json.dumps(r, sort_keys=True, separators=(",", ":")) for r in records
            ]
            _atomic_write(config.output, "".join(line + "\n" for line in lines))
    return SearchReport(
        k=k,
        q=gf.q,
        modulus=gf.modulus,
        bounds=bounds,
        counters=counters,
        found=arcs if completed else list(found_raw),
        records=records,
        output=config.output if completed else None,
        cursor=cursor,
        completed=completed,
        experimental=k not in (12, 14),
        discrepancy=discrepancy,
        elapsed=time.monotonic() - t0,
    )

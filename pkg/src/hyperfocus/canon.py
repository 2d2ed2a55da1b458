"""Canonical forms of arcs under collineations fixing the focus line.

Equivalence here is generated by projectivities stabilizing the line
(as a set) together with the Frobenius automorphisms: the collineations
of PG(2, q) fixing Z = 0.

normalize_frame sends an ordered triple of arc points to the reference
position: with l1, l2, l3 the sides of the triangle, the projectivity is
pinned by l -> Z=0, l1 -> X=0, l2 -> Y=0, l3 -> X+Y+Z=0, which places the
triple at (1,0,1), (0,1,1), (0,0,1) and the three side focuses at
(0,1,0), (1,0,0), (1,1,0).  The canonical form of an arc is the
lexicographically smallest serialization of any normalized image over all
ordered triples and Frobenius powers; two arcs are equivalent iff their
forms agree.
"""

from __future__ import annotations

import hashlib
import itertools
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from hyperfocus.field import GF
from hyperfocus.plane import (
    LINE_AT_INFINITY,
    Line,
    Matrix,
    Point,
    apply_point,
    frame_map,
    frobenius_point,
    incident,
    line_through,
    meet,
    point_index,
)
from hyperfocus.arcs import Arc, LineMeetsArc

_DST_FRAME = ((0, 0, 1), (1, 0, 1), (0, 1, 0), (1, 1, 0))


def normalize_frame(
    gf: GF, arc: Arc, line: Line, triple: Sequence[Point]
) -> Tuple[Matrix, Arc]:
    """Projectivity and image arc putting (P1, P2, P3) in reference position.

    The source frame (P3, P1, l^l1, l^l3) is always in general position
    when the triple consists of arc points and the line is exterior, so
    the map exists and is unique.
    """
    p1, p2, p3 = triple
    if any(incident(gf, p, line) for p in (p1, p2, p3)):
        raise LineMeetsArc("triple points must be off the line")
    l1 = line_through(gf, p2, p3)
    l3 = line_through(gf, p1, p2)
    src = (p3, p1, meet(gf, line, l1), meet(gf, line, l3))
    t = frame_map(gf, src, _DST_FRAME)
    image = tuple(
        sorted(
            (apply_point(gf, t, p) for p in arc),
            key=lambda p: point_index(gf, p),
        )
    )
    return t, image


def check_star(gf: GF, arc: Arc) -> bool:
    """Reference position test: the three anchor points are in the arc,
    every point is affine, and the three anchor focuses appear on Z = 0."""
    pts = set(arc)
    if not {(0, 0, 1), (0, 1, 1), (1, 0, 1)} <= pts:
        return False
    if any(p[2] != 1 for p in arc):
        return False
    focuses = set()
    for a, b in itertools.combinations(arc, 2):
        ln = line_through(gf, a, b)
        focuses.add(meet(gf, ln, LINE_AT_INFINITY))
    return {(0, 1, 0), (1, 1, 0), (1, 0, 0)} <= focuses


def frobenius_orbit_reps(
    gf: GF, exclude: FrozenSet[int] = frozenset({0})
) -> List[int]:
    """Orbit representatives of F_q \\ exclude under x -> x^2.

    The representative of an orbit is its element of minimal discrete log
    (0 itself, if not excluded, is its own orbit).  Sorted by that log.
    """
    seen = set(exclude)
    reps: List[Tuple[int, int]] = []
    for e in range(gf.q - 1):
        a = gf.exp[e]
        if a in seen:
            continue
        reps.append((e, a))
        b = a
        while True:
            seen.add(b)
            b = gf.mul(b, b)
            if b == a:
                break
    if 0 not in seen:
        reps.insert(0, (-1, 0))
    return [a for _, a in reps]


def serialize_arc(gf: GF, arc: Arc) -> bytes:
    """Fixed-width big-endian coordinate dump, points in index order."""
    w = (gf.s + 7) // 8
    pts = sorted(arc, key=lambda p: point_index(gf, p))
    return b"".join(
        c.to_bytes(w, "big") for p in pts for c in p
    )


def canonical_form(gf: GF, arc: Arc, line: Line = LINE_AT_INFINITY) -> bytes:
    """Lex-min serialized normalized image over all ordered triples of arc
    points and all Frobenius powers.

    Invariant under every collineation fixing the line: such a map sends
    normalized images of one arc onto those of the other.
    """
    best: bytes | None = None
    for triple in itertools.permutations(arc, 3):
        _, image = normalize_frame(gf, arc, line, triple)
        for i in range(gf.s):
            cand = tuple(
                sorted(
                    (frobenius_point(gf, p, i) for p in image),
                    key=lambda p: point_index(gf, p),
                )
            )
            blob = serialize_arc(gf, cand)
            if best is None or blob < best:
                best = blob
    if best is None:
        raise ValueError("arc too small for a triple")
    return best


def digest(form: bytes) -> str:
    return hashlib.sha256(form).hexdigest()[:16]


def arc_digest(gf: GF, arc: Arc, line: Line = LINE_AT_INFINITY) -> str:
    return digest(canonical_form(gf, arc, line))


def equivalence_classes(
    gf: GF, arcs: Iterable[Arc], line: Line = LINE_AT_INFINITY
) -> List[Tuple[str, List[int]]]:
    """Group arc indices by canonical form; classes ordered by form."""
    groups: Dict[bytes, List[int]] = {}
    for i, arc in enumerate(arcs):
        groups.setdefault(canonical_form(gf, arc, line), []).append(i)
    return [(digest(form), groups[form]) for form in sorted(groups)]

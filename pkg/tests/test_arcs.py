"""Arc predicates, focus sets, translation constructions, enumeration."""

import random
from collections import Counter

import pytest

from oracles import assert_no_nested_hyperfocused

from hyperfocus.arcs import (
    HYPERFOCUSED,
    SHARPLY_FOCUSED,
    ArcError,
    BadExponent,
    DuplicatePoint,
    NotAnArc,
    PointInArc,
    PointOnSecant,
    additive_closure,
    arc_accepts,
    classify_focus,
    complete_to_hyperovals,
    diagonal_line,
    double_translation_arc,
    enumerate_hyperfocused_naive,
    extend_arc,
    focus_count,
    focus_set,
    hyperfocused_spectrum,
    is_arc,
    is_exterior,
    line_type,
    make_arc,
    secants,
    tangents_through,
    translation_arc,
    translation_hyperoval,
)
from hyperfocus.plane import (
    LINE_AT_INFINITY,
    all_lines,
    all_points,
    incident,
)

QUAD = ((0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1))


def test_make_arc_basics(gf4):
    arc = make_arc(gf4, QUAD)
    assert len(arc) == 4
    assert is_arc(gf4, arc)
    with pytest.raises(DuplicatePoint):
        make_arc(gf4, QUAD + ((0, 0, 2),))  # (0,0,2) scales to (0,0,1)
    with pytest.raises(NotAnArc):
        make_arc(gf4, [(0, 0, 1), (0, 1, 1), (0, 2, 1)])


def test_extend_and_accept(gf4):
    arc = make_arc(gf4, [(0, 0, 1), (0, 1, 1)])
    assert arc_accepts(gf4, arc, (1, 0, 1))
    assert not arc_accepts(gf4, arc, (0, 2, 1))  # on the secant X=0
    bigger = extend_arc(gf4, arc, (1, 0, 1))
    assert len(bigger) == 3
    with pytest.raises(PointInArc):
        extend_arc(gf4, bigger, (1, 0, 1))
    with pytest.raises(PointOnSecant):
        extend_arc(gf4, bigger, (0, 3, 1))


def test_line_type(gf4):
    arc = make_arc(gf4, QUAD)
    assert line_type(gf4, arc, (1, 0, 0)) == "secant"  # X=0 holds 2 points
    assert line_type(gf4, arc, (1, 2, 0)) == "tangent"  # X=2Y: only (0,0,1)
    assert line_type(gf4, arc, LINE_AT_INFINITY) == "exterior"
    assert is_exterior(gf4, arc, LINE_AT_INFINITY)
    assert not is_exterior(gf4, arc, (1, 0, 0))


def test_quadrangle_focus_set(gf4):
    """The unit quadrangle is hyperfocused on Z=0 with the three
    diagonal points as its focus set."""
    arc = make_arc(gf4, QUAD)
    foci = focus_set(gf4, arc, LINE_AT_INFINITY)
    assert set(foci) == {(1, 0, 0), (0, 1, 0), (1, 1, 0)}
    assert focus_count(gf4, arc, LINE_AT_INFINITY) == 3
    assert classify_focus(gf4, arc, LINE_AT_INFINITY) == (HYPERFOCUSED, 3)


def test_every_quadrangle_hyperfocused_on_diagonal(gf32):
    """Char-2 quadrangles have collinear diagonal points, so each 4-arc
    is hyperfocused on its diagonal line."""
    rng = random.Random(41)
    pts = [p for p in all_points(gf32)]
    for _ in range(100):
        arc = make_arc(gf32, [(0, 0, 1)])
        while len(arc) < 4:
            p = pts[rng.randrange(len(pts))]
            if arc_accepts(gf32, arc, p):
                arc = extend_arc(gf32, arc, p)
        line = diagonal_line(gf32, arc)
        assert classify_focus(gf32, arc, line) == (HYPERFOCUSED, 3)


def test_tangents_through_quadrangle(gf4):
    arc = make_arc(gf4, QUAD)
    # (1,0,0) lies on the two secants Y=0 and Y=1, which pair up all
    # four points, so no tangent passes through it.
    assert tangents_through(gf4, arc, (1, 0, 0)) == []
    # (1,w,0) with w outside {0,1} lies on no secant: all four lines
    # through it and an arc point are tangents.
    assert len(tangents_through(gf4, arc, (1, 2, 0))) == 4
    with pytest.raises(PointInArc):
        tangents_through(gf4, arc, (0, 0, 1))


def test_triangle_sharply_focused(gf8):
    tri = make_arc(gf8, [(0, 0, 1), (1, 0, 1), (0, 1, 1)])
    kind, n = classify_focus(gf8, tri, LINE_AT_INFINITY)
    assert (kind, n) == (SHARPLY_FOCUSED, 3)


def test_two_arc_focus(gf8):
    arc = make_arc(gf8, [(0, 0, 1), (1, 3, 1)])
    assert classify_focus(gf8, arc, LINE_AT_INFINITY) == (HYPERFOCUSED, 1)


def test_secant_counts(gf32):
    """12 and 14 point arcs versus an 8 point sub-arc: 38 and 63 new
    secants respectively."""
    oval = translation_hyperoval(gf32, 1)
    affine = [p for p in oval if p[2] == 1]
    arc14 = make_arc(gf32, affine[:14])
    arc12 = make_arc(gf32, affine[:12])
    arc8 = make_arc(gf32, affine[:8])
    assert len(secants(gf32, arc12)) == 66
    assert len(secants(gf32, arc14)) == 91
    assert len(secants(gf32, arc8)) == 28
    assert 66 - 28 == 38
    assert 91 - 28 == 63
    # secants of a genuine arc are pairwise distinct lines
    assert len(set(secants(gf32, arc14))) == 91


def test_focus_bounds_random_arcs(gf8):
    """k-1 <= |F| <= min(k(k-1)/2, q+1) for random arcs and exterior
    lines."""
    rng = random.Random(7)
    pts = list(all_points(gf8))
    lines = list(all_lines(gf8))
    done = 0
    while done < 60:
        size = rng.choice([2, 3, 4, 5, 6, 7, 8])
        arc = ()
        for p in rng.sample(pts, len(pts)):
            if len(arc) == size:
                break
            if arc_accepts(gf8, arc, p):
                arc = extend_arc(gf8, arc, p)
        if len(arc) != size:
            continue
        ext = [m for m in lines if is_exterior(gf8, arc, m)]
        if not ext:
            continue
        m = ext[rng.randrange(len(ext))]
        n = focus_count(gf8, arc, m)
        k = len(arc)
        assert k - 1 <= n <= min(k * (k - 1) // 2, gf8.q + 1)
        done += 1


# --- translation constructions --------------------------------------------


def test_additive_closure(gf4):
    g = additive_closure(gf4, [(1, 1), (2, 3)])
    assert len(g) == 4
    assert (0, 0) in g and (3, 2) in g
    with pytest.raises(ArcError):
        additive_closure(gf4, [(4, 0)])


def test_translation_arc_trivial_group(gf4):
    arc = translation_arc(gf4, additive_closure(gf4, []), (2, 3, 1))
    assert arc == ((2, 3, 1),)


def test_translation_arc_conic_graph(gf4):
    """Graph of a -> a^2 over span{1, w} gives a hyperfocused 4-arc."""
    w = 2
    gens = [(1, gf4.mul(1, 1)), (w, gf4.mul(w, w))]
    arc = translation_arc(gf4, additive_closure(gf4, gens))
    assert len(arc) == 4
    assert all(y == gf4.mul(x, x) for x, y, _ in arc)
    assert classify_focus(gf4, arc, LINE_AT_INFINITY) == (HYPERFOCUSED, 3)


def test_translation_arc_subgroup_of_conic(gf32):
    """a -> a^2 restricted to an 8-element additive subgroup of F32:
    an 8-arc on the conic X^2 = YZ, hyperfocused on Z=0."""
    span = [1, 2, 4]  # 1, w, w^2
    gens = [(a, gf32.mul(a, a)) for a in span]
    group = additive_closure(gf32, gens)
    assert len(group) == 8
    arc = translation_arc(gf32, group)
    assert len(arc) == 8
    assert all(gf32.mul(x, x) == gf32.mul(y, z) for x, y, z in arc)
    assert classify_focus(gf32, arc, LINE_AT_INFINITY) == (HYPERFOCUSED, 7)


def test_translation_arc_rejects_collinear_orbit(gf4):
    # orbit of (0,0,1) under {(0,0),(0,1),(0,2),(0,3)} sits on X=0
    with pytest.raises(NotAnArc):
        translation_arc(gf4, additive_closure(gf4, [(0, 1), (0, 2)]))


def test_translation_arcs_random_subgroups(gf16):
    """Subgroup orbits that pass the arc test are always hyperfocused
    on Z=0: secant directions live in the group."""
    rng = random.Random(13)
    found = 0
    while found < 10:
        gens = [
            (rng.randrange(gf16.q), rng.randrange(gf16.q))
            for _ in range(rng.choice([1, 2]))
        ]
        group = additive_closure(gf16, gens)
        if len(group) < 2:
            continue
        try:
            arc = translation_arc(gf16, group)
        except NotAnArc:
            continue
        kind, n = classify_focus(gf16, arc, LINE_AT_INFINITY)
        assert (kind, n) == (HYPERFOCUSED, len(arc) - 1)
        found += 1


def test_double_translation_two_arc(gf8):
    group = additive_closure(gf8, [(1, 1)])
    arc = translation_arc(gf8, group)
    assert len(arc) == 2
    # the only secant is Y=X; (1,0) shifts the base off it
    big_group, big = double_translation_arc(gf8, group, (1, 0))
    assert len(big) == 4
    assert len(big_group) == 4
    assert classify_focus(gf8, big, LINE_AT_INFINITY) == (HYPERFOCUSED, 3)


def test_double_translation_scan_to_eight(gf32):
    """Scan affine shifts to double a 4-arc into a translation 8-arc."""
    group = additive_closure(gf32, [(1, 1), (2, gf32.mul(2, 2))])
    arc = translation_arc(gf32, group)
    assert len(arc) == 4
    lines = secants(gf32, arc)
    shift = None
    for sx in range(gf32.q):
        for sy in range(gf32.q):
            if (sx, sy) in group:
                continue
            moved = (sx, sy, 1)
            if not any(incident(gf32, moved, m) for m in lines):
                shift = (sx, sy)
                break
        if shift:
            break
    assert shift is not None
    big_group, big = double_translation_arc(gf32, group, shift)
    assert len(big) == 8 and len(big_group) == 8
    assert classify_focus(gf32, big, LINE_AT_INFINITY) == (HYPERFOCUSED, 7)


def test_double_translation_rejects_secant_shift(gf8):
    group = additive_closure(gf8, [(1, 1)])
    with pytest.raises(PointOnSecant):
        double_translation_arc(gf8, group, (2, 2))  # stays on Y=X


# --- hyperovals ------------------------------------------------------------


def test_translation_hyperoval_sizes(gf32, gf16):
    oval1 = translation_hyperoval(gf32, 1)
    oval2 = translation_hyperoval(gf32, 2)
    assert len(oval1) == 34 and len(oval2) == 34
    assert oval1 != oval2
    with pytest.raises(BadExponent):
        translation_hyperoval(gf16, 2)
    with pytest.raises(BadExponent):
        translation_hyperoval(gf32, 0)


def test_hyperoval_has_no_tangents(gf8):
    oval = translation_hyperoval(gf8, 1)
    for m in all_lines(gf8):
        assert line_type(gf8, oval, m) != "tangent"
    assert tangents_through(gf8, oval, (1, 2, 0)) == []


def test_hyperoval_hyperfocused_everywhere(gf32):
    """A hyperoval is hyperfocused on every exterior line, with the full
    line as focus set (|F| = q+1 = k-1)."""
    oval = translation_hyperoval(gf32, 1)
    rng = random.Random(3)
    lines = list(all_lines(gf32))
    rng.shuffle(lines)
    checked = 0
    for m in lines:
        if not is_exterior(gf32, oval, m):
            continue
        assert classify_focus(gf32, oval, m) == (HYPERFOCUSED, gf32.q + 1)
        checked += 1
        if checked == 10:
            break
    assert checked == 10


def test_complete_to_hyperovals_q4(gf4):
    arc = make_arc(gf4, QUAD)
    ovals = complete_to_hyperovals(gf4, arc)
    assert ovals
    for oval in ovals:
        assert len(oval) == 6
        assert set(arc) <= set(oval)
        assert is_arc(gf4, oval)


# --- exhaustive enumeration ------------------------------------------------


def test_enumerate_matches_naive_q4(gf4, q4_hyperfocused):
    naive = enumerate_hyperfocused_naive(gf4, LINE_AT_INFINITY)
    assert {frozenset(a) for a in q4_hyperfocused} == {
        frozenset(a) for a in naive
    }
    assert Counter(len(a) for a in q4_hyperfocused) == {2: 120, 4: 120, 6: 48}


def test_spectrum_q4(gf4):
    assert hyperfocused_spectrum(gf4, LINE_AT_INFINITY) == {
        2: 120,
        4: 120,
        6: 48,
    }


def test_spectrum_q8(q8_hyperfocused):
    sizes = Counter(len(a) for a in q8_hyperfocused)
    assert sizes == {2: 2016, 4: 9408, 8: 20160, 10: 12544}


def test_enumerated_arcs_are_hyperfocused_sample(gf8, q8_hyperfocused):
    rng = random.Random(11)
    for arc in rng.sample(q8_hyperfocused, 40):
        kind, n = classify_focus(gf8, arc, LINE_AT_INFINITY)
        assert (kind, n) == (HYPERFOCUSED, len(arc) - 1)


def test_enumeration_uniform_across_lines(gf8):
    """Z=0 is nothing special: any line carries the same spectrum."""
    assert hyperfocused_spectrum(gf8, (1, 0, 0)) == {
        2: 2016,
        4: 9408,
        8: 20160,
        10: 12544,
    }


@pytest.mark.parametrize("qname", ["gf4", "gf8"])
def test_nested_arc_bound(qname, request):
    """No hyperfocused arc strictly contains a hyperfocused sub-arc of
    more than half its size (exhaustive over all arcs on Z=0)."""
    gf = request.getfixturevalue(qname)
    arcs = (
        request.getfixturevalue("q4_hyperfocused")
        if qname == "gf4"
        else request.getfixturevalue("q8_hyperfocused")
    )
    assert assert_no_nested_hyperfocused(gf, arcs) > 0


@pytest.mark.parametrize("qname", ["gf4", "gf8"])
def test_large_arcs_complete_to_hyperovals(qname, request):
    """Every hyperfocused k-arc with k > q/2 on Z=0 extends to a
    hyperoval (exhaustive)."""
    gf = request.getfixturevalue(qname)
    arcs = (
        request.getfixturevalue("q4_hyperfocused")
        if qname == "gf4"
        else request.getfixturevalue("q8_hyperfocused")
    )
    for arc in arcs:
        if len(arc) <= gf.q // 2:
            continue
        assert complete_to_hyperovals(gf, arc, first_only=True), (
            f"{len(arc)}-arc not inside any hyperoval"
        )

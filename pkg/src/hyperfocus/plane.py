"""Points, lines and collineations of PG(2, q) over GF(2^s).

A point is a homogeneous triple (x, y, z) canonically scaled so its last
nonzero coordinate is 1; equality is then plain tuple equality.  A line is
the coefficient triple [a, b, c] of aX + bY + cZ = 0 under the same
scaling.  In characteristic 2 the cross product is sign-free, so the same
formula joins two points into a line and meets two lines in a point.

Dense point index: affine (x, y, 1) -> x*q + y, direction (m, 1, 0) ->
q^2 + m, and (1, 0, 0) -> q^2 + q, covering all q^2 + q + 1 points.
"""

from __future__ import annotations

from typing import Iterator, List, Sequence, Tuple

from hyperfocus.field import GF

Point = Tuple[int, int, int]
Line = Tuple[int, int, int]
Matrix = Tuple[Tuple[int, int, int], Tuple[int, int, int], Tuple[int, int, int]]

# The focus line used throughout: Z = 0, the line at infinity.
LINE_AT_INFINITY: Line = (0, 0, 1)


class ZeroTriple(ValueError):
    """(0, 0, 0) is not a projective point or line."""


class SamePoint(ValueError):
    """Two coincident points do not span a line."""


class SameLine(ValueError):
    """Two coincident lines do not meet in a single point."""


class DegenerateFrame(ValueError):
    """A frame needs 4 points, no 3 collinear."""


class SingularMatrix(ValueError):
    """Determinant zero: not a collineation."""


def scale(gf: GF, t: Sequence[int]) -> Point:
    """Canonical representative: divide by the last nonzero coordinate."""
    x, y, z = t
    if z:
        zi = gf.inv(z)
        return (gf.mul(x, zi), gf.mul(y, zi), 1)
    if y:
        yi = gf.inv(y)
        return (gf.mul(x, yi), 1, 0)
    if x:
        return (1, 0, 0)
    raise ZeroTriple("zero triple")


def cross(gf: GF, u: Sequence[int], v: Sequence[int]) -> Tuple[int, int, int]:
    """Char-2 cross product (unscaled)."""
    m = gf.mul
    return (
        m(u[1], v[2]) ^ m(u[2], v[1]),
        m(u[2], v[0]) ^ m(u[0], v[2]),
        m(u[0], v[1]) ^ m(u[1], v[0]),
    )


def dot(gf: GF, u: Sequence[int], v: Sequence[int]) -> int:
    m = gf.mul
    return m(u[0], v[0]) ^ m(u[1], v[1]) ^ m(u[2], v[2])


def line_through(gf: GF, p: Point, r: Point) -> Line:
    w = cross(gf, p, r)
    if w == (0, 0, 0):
        raise SamePoint(f"{p} and {r} coincide")
    return scale(gf, w)


def meet(gf: GF, m1: Line, m2: Line) -> Point:
    w = cross(gf, m1, m2)
    if w == (0, 0, 0):
        raise SameLine(f"{m1} and {m2} coincide")
    return scale(gf, w)


def incident(gf: GF, p: Point, m: Line) -> bool:
    return dot(gf, p, m) == 0


def det3(gf: GF, a: Sequence[int], b: Sequence[int], c: Sequence[int]) -> int:
    m = gf.mul
    return (
        m(a[0], m(b[1], c[2]) ^ m(b[2], c[1]))
        ^ m(a[1], m(b[0], c[2]) ^ m(b[2], c[0]))
        ^ m(a[2], m(b[0], c[1]) ^ m(b[1], c[0]))
    )


def collinear(gf: GF, a: Point, b: Point, c: Point) -> bool:
    return det3(gf, a, b, c) == 0


# --- dense point index ---------------------------------------------------


def point_index(gf: GF, p: Point) -> int:
    x, y, z = p
    if z == 1:
        return x * gf.q + y
    if y == 1:
        return gf.q * gf.q + x
    return gf.q * gf.q + gf.q


def point_from_index(gf: GF, i: int) -> Point:
    q = gf.q
    if i < q * q:
        return (i // q, i % q, 1)
    if i < q * q + q:
        return (i - q * q, 1, 0)
    if i == q * q + q:
        return (1, 0, 0)
    raise ValueError(f"index {i} out of range")


def all_points(gf: GF) -> Iterator[Point]:
    for i in range(gf.q * gf.q + gf.q + 1):
        yield point_from_index(gf, i)


def all_lines(gf: GF) -> Iterator[Line]:
    # Same canonical triples as points, read as coefficient vectors.
    yield from all_points(gf)


def line_points(gf: GF, m: Line) -> List[Point]:
    """The q + 1 points of a line, in dense index order."""
    a, b, c = m
    if a == 0 and b == 0:
        # Z = 0: all directions plus (1, 0, 0).
        return [(x, 1, 0) for x in gf.elements()] + [(1, 0, 0)]
    pts: List[Point] = []
    if b:
        # y = (a x + c) / b for each x
        bi = gf.inv(b)
        pts.extend((x, gf.mul(gf.mul(a, x) ^ c, bi), 1) for x in gf.elements())
    else:
        # vertical: x = c / a, y free
        xv = gf.div(c, a)
        pts.extend((xv, y, 1) for y in gf.elements())
    # the single direction point satisfies a x + b y = 0: (b, a, 0)
    pts.append(scale(gf, (b, a, 0)))
    pts.sort(key=lambda p: point_index(gf, p))
    return pts


def lines_through(gf: GF, p: Point) -> List[Line]:
    """The q + 1 lines through a point (coefficient triples, index order)."""
    return line_points(gf, p)  # point/line duality: same incidence equation


# --- collineations --------------------------------------------------------


def mat_vec(gf: GF, t: Matrix, v: Sequence[int]) -> Tuple[int, int, int]:
    m = gf.mul
    return tuple(
        m(row[0], v[0]) ^ m(row[1], v[1]) ^ m(row[2], v[2]) for row in t
    )  # type: ignore[return-value]


def apply_point(gf: GF, t: Matrix, p: Point) -> Point:
    return scale(gf, mat_vec(gf, t, p))


def mat_mul(gf: GF, a: Matrix, b: Matrix) -> Matrix:
    m = gf.mul
    return tuple(
        tuple(
            m(a[i][0], b[0][j]) ^ m(a[i][1], b[1][j]) ^ m(a[i][2], b[2][j])
            for j in range(3)
        )
        for i in range(3)
    )  # type: ignore[return-value]


def mat_det(gf: GF, a: Matrix) -> int:
    return det3(gf, a[0], a[1], a[2])


def mat_inv(gf: GF, a: Matrix) -> Matrix:
    """Inverse by adjugate; char 2 drops the cofactor signs."""
    d = mat_det(gf, a)
    if d == 0:
        raise SingularMatrix("matrix is singular")
    di = gf.inv(d)
    m = gf.mul

    def cof(i: int, j: int) -> int:
        r = [k for k in range(3) if k != i]
        c = [k for k in range(3) if k != j]
        return m(a[r[0]][c[0]], a[r[1]][c[1]]) ^ m(a[r[0]][c[1]], a[r[1]][c[0]])

    # adjugate = transpose of cofactor matrix
    return tuple(
        tuple(m(di, cof(j, i)) for j in range(3)) for i in range(3)
    )  # type: ignore[return-value]


def apply_line(gf: GF, t: Matrix, m: Line) -> Line:
    """Image of a line under the point map t: coefficients go through
    the inverse transpose."""
    ti = mat_inv(gf, t)
    w = tuple(
        gf.mul(m[0], ti[0][j]) ^ gf.mul(m[1], ti[1][j]) ^ gf.mul(m[2], ti[2][j])
        for j in range(3)
    )
    return scale(gf, w)


def _std_frame_matrix(gf: GF, quad: Sequence[Point]) -> Matrix:
    """Matrix sending the standard frame e1, e2, e3, (1,1,1) to quad."""
    p1, p2, p3, p4 = quad
    d = det3(gf, p1, p2, p3)
    if d == 0:
        raise DegenerateFrame("first three frame points are collinear")
    # Solve [p1 p2 p3] lam = p4 by Cramer.
    l1 = gf.div(det3(gf, p4, p2, p3), d)
    l2 = gf.div(det3(gf, p1, p4, p3), d)
    l3 = gf.div(det3(gf, p1, p2, p4), d)
    if l1 == 0 or l2 == 0 or l3 == 0:
        raise DegenerateFrame("fourth frame point lies on a side of the triangle")
    cols = (
        tuple(gf.mul(l1, x) for x in p1),
        tuple(gf.mul(l2, x) for x in p2),
        tuple(gf.mul(l3, x) for x in p3),
    )
    return tuple(
        (cols[0][i], cols[1][i], cols[2][i]) for i in range(3)
    )  # type: ignore[return-value]


def frame_map(gf: GF, src: Sequence[Point], dst: Sequence[Point]) -> Matrix:
    """The unique projectivity sending the frame src to the frame dst.

    Both arguments are 4-tuples of points with no 3 collinear.
    """
    ms = _std_frame_matrix(gf, src)
    md = _std_frame_matrix(gf, dst)
    return mat_mul(gf, md, mat_inv(gf, ms))


def frobenius_point(gf: GF, p: Point, i: int = 1) -> Point:
    """Coordinate-wise field automorphism; a collineation of the plane."""
    return (gf.frobenius(p[0], i), gf.frobenius(p[1], i), gf.frobenius(p[2], i))

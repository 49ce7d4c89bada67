"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`; points are tuples of fractions and
matrices are sequences of rows.  Nothing here ever touches a float.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Optional, Sequence

from polyvol import lp

Point = tuple  # tuple[Fraction, ...]
Matrix = Sequence[Sequence[Fraction]]

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


class DimensionError(ValueError):
    """Operands have incompatible shapes."""


class DegenerateError(ValueError):
    """A geometric predicate was asked about an affinely dependent set."""


def parse_rational(text: str) -> Fraction:
    """Parse ``p``, ``-p`` or ``p/q``.  Anything else is a ``ValueError``."""
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"invalid rational {text!r}")
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise ValueError(f"invalid rational {text!r}: zero denominator")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def as_point(coords) -> Point:
    return tuple(Fraction(c) for c in coords)


def sub(u, v) -> Point:
    return tuple(a - b for a, b in zip(u, v))


def dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def centroid(points) -> Point:
    points = list(points)
    k = len(points)
    return tuple(sum(col, Fraction(0)) / k for col in zip(*points))


def _check_square(m: Matrix) -> int:
    n = len(m)
    if n == 0 or any(len(row) != n for row in m):
        raise DimensionError("determinant needs a non-empty square matrix")
    return n


def det(m: Matrix) -> Fraction:
    """Exact determinant by Bareiss fraction-free elimination.

    Each row is first scaled to integers by the lcm of its denominators; the
    product of those scale factors is divided out at the end.
    """
    n = _check_square(m)
    a = []
    scale = 1
    for row in m:
        row = [Fraction(x) for x in row]
        den = math.lcm(*(x.denominator for x in row))
        a.append([x.numerator * (den // x.denominator) for x in row])
        scale *= den

    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = a[k][k]
        for i in range(k + 1, n):
            row_i, row_k = a[i], a[k]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return Fraction(sign * a[n - 1][n - 1], scale)


def rank(m: Matrix) -> int:
    rows = [[Fraction(x) for x in row] for row in m]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pr = rows[r]
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f:
                f /= pr[c]
                rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
        r += 1
        if r == len(rows):
            break
    return r


def affine_rank(points) -> int:
    """Dimension of the affine hull; -1 for the empty set."""
    points = list(points)
    if not points:
        return -1
    base = points[0]
    return rank([sub(p, base) for p in points[1:]]) if len(points) > 1 else 0


def solve_linear(a: Matrix, b) -> Optional[Point]:
    """Unique solution of ``a x = b``, or ``None`` when ``a`` is singular."""
    n = len(a)
    if any(len(row) != n for row in a) or len(b) != n:
        raise DimensionError("solve_linear needs an n x n matrix and a length-n vector")
    rows = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(a, b)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot is None:
            return None
        rows[c], rows[pivot] = rows[pivot], rows[c]
        pr = rows[c]
        inv = 1 / pr[c]
        pr = rows[c] = [x * inv for x in pr]
        for i in range(n):
            if i != c and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
    return tuple(row[n] for row in rows)


def nullspace(m: Matrix) -> list[Point]:
    """Basis of the right kernel, read off the reduced row-echelon form.

    Pivot columns are chosen left to right; one basis vector per free column.
    """
    rows = [[Fraction(x) for x in row] for row in m]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][free]
        basis.append(tuple(v))
    return basis


def simplex_volume(vertices) -> Fraction:
    """Unsigned volume ``|det(v1 - v0, ..., vn - v0)| / n!``."""
    vertices = [as_point(v) for v in vertices]
    if not vertices:
        raise DimensionError("simplex needs at least one vertex")
    n = len(vertices[0])
    if len(vertices) != n + 1 or any(len(v) != n for v in vertices):
        raise DimensionError(f"a simplex in dimension {n} has {n + 1} vertices")
    v0 = vertices[0]
    return abs(det([sub(v, v0) for v in vertices[1:]])) / math.factorial(n)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def side_sign(h_points, a) -> int:
    """Sign of ``det(v1 - a, ..., vn - a)`` for the hyperplane through ``h_points``.

    Two points are strictly separated by the hyperplane iff their signs
    multiply to -1; the sign is 0 iff ``a`` is on the hyperplane.
    """
    h_points = [as_point(v) for v in h_points]
    a = as_point(a)
    n = len(a)
    if len(h_points) != n or any(len(v) != n for v in h_points):
        raise DimensionError(f"a hyperplane in dimension {n} needs {n} spanning points")
    if affine_rank(h_points) != n - 1:
        raise DegenerateError("spanning points are affinely dependent")
    return _sign(det([sub(v, a) for v in h_points]))


def lp_feasible_strict(eq: Matrix, nvars: int) -> Optional[Point]:
    """A strictly positive solution of the augmented system ``eq``, if any.

    Each row of ``eq`` is ``c_1 ... c_nvars rhs``.  Writes ``lam = mu + t``
    with ``mu >= 0`` and ``0 <= t <= 1`` and maximizes ``t``; the system has
    a strictly positive solution iff the optimum is positive.
    """
    if any(len(row) != nvars + 1 for row in eq):
        raise DimensionError(f"each equation row needs {nvars} coefficients and a rhs")
    a_eq = []
    b_eq = []
    for row in eq:
        coeffs = [Fraction(x) for x in row[:nvars]]
        a_eq.append(coeffs + [sum(coeffs, Fraction(0)), Fraction(0)])
        b_eq.append(Fraction(row[nvars]))
    a_eq.append([Fraction(0)] * nvars + [Fraction(1), Fraction(1)])
    b_eq.append(Fraction(1))
    objective = [Fraction(0)] * nvars + [Fraction(1), Fraction(0)]
    res = lp.maximize(objective, a_eq, b_eq)
    if res.status != "optimal" or res.value <= 0:
        return None
    t = res.x[nvars]
    return tuple(mu + t for mu in res.x[:nvars])


def positive_combination(vectors) -> Optional[Point]:
    """Weights ``lam > 0`` with ``sum lam = 1`` and ``sum lam_i v_i = 0``."""
    vectors = [as_point(v) for v in vectors]
    if not vectors:
        return None
    dim = len(vectors[0])
    rows = [[v[k] for v in vectors] + [Fraction(0)] for k in range(dim)]
    rows.append([Fraction(1)] * len(vectors) + [Fraction(1)])
    return lp_feasible_strict(rows, len(vectors))

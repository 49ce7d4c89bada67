"""H-representations: parsing, vertex enumeration, incidences, redundancy, slicing.

An inequality ``a.x <= b`` is stored as an :class:`Inequality`; an
:class:`HPolytope` is an ordered, optionally labelled list of them.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from polyvol import lp
from polyvol.exact import (
    DimensionError,
    affine_rank,
    as_point,
    centroid,
    dot,
    format_rational,
    parse_rational,
    positive_combination,
    rank,
)

DEFAULT_BASIS_BUDGET = 10**6
BUDGET_ENV = "POLYVOL_BASIS_BUDGET"


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class UnboundedError(ValueError):
    """The feasible region has a recession direction."""


class BudgetError(RuntimeError):
    """A combinatorial search would exceed its configured budget."""


@dataclass(frozen=True)
class Inequality:
    """``coeffs . x <= rhs``."""

    coeffs: tuple
    rhs: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coeffs", as_point(self.coeffs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))
        if not any(self.coeffs):
            raise ValueError("inequality has an all-zero coefficient vector")

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def value(self, x) -> Fraction:
        return dot(self.coeffs, x)

    def slack(self, x) -> Fraction:
        return self.rhs - dot(self.coeffs, x)

    def tight(self, x) -> bool:
        return dot(self.coeffs, x) == self.rhs

    def flipped(self) -> "Inequality":
        return Inequality(tuple(-c for c in self.coeffs), -self.rhs)

    def canonical(self) -> tuple:
        """Primitive integer form: denominators cleared, gcd divided out."""
        vals = self.coeffs + (self.rhs,)
        den = math.lcm(*(v.denominator for v in vals))
        ints = [v.numerator * (den // v.denominator) for v in vals]
        g = math.gcd(*ints)
        return tuple(v // g for v in ints)


@dataclass(frozen=True)
class HPolytope:
    dim: int
    inequalities: tuple
    labels: tuple = ()
    order: tuple = ()

    def __post_init__(self):
        ineqs = tuple(self.inequalities)
        object.__setattr__(self, "inequalities", ineqs)
        labels = tuple(self.labels) if self.labels else tuple(f"h{i}" for i in range(len(ineqs)))
        if len(labels) != len(ineqs):
            raise ValueError("one label per inequality")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "order", tuple(self.order))
        for h in ineqs:
            if h.dim != self.dim:
                raise DimensionError(f"inequality of length {h.dim} in a dimension-{self.dim} system")
        if self.order and len(self.order) != self.dim:
            raise DimensionError("coordinate order must name every coordinate")

    def __len__(self) -> int:
        return len(self.inequalities)

    def contains(self, x) -> bool:
        return all(h.value(x) <= h.rhs for h in self.inequalities)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None

    def with_inequality(self, h: Inequality, label: str) -> "HPolytope":
        return HPolytope(self.dim, self.inequalities + (h,), self.labels + (label,), self.order)

    def to_text(self) -> str:
        lines = [f"dim {self.dim}"]
        if self.order:
            lines.append("order " + " ".join(self.order))
        for label, h in zip(self.labels, self.inequalities):
            coeffs = " ".join(format_rational(c) for c in h.coeffs)
            lines.append(f"{label}: {coeffs} <= {format_rational(h.rhs)}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class VertexSet:
    points: tuple
    incidences: tuple = field(default=())

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def parse_hrep(text: str) -> HPolytope:
    dim = None
    order = ()
    ineqs = []
    labels = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()
        if head[0] == "dim":
            if dim is not None:
                raise ParseError("duplicate dim line", lineno)
            if len(head) != 2 or not head[1].isdigit() or int(head[1]) < 1:
                raise ParseError("expected 'dim <n>' with n >= 1", lineno)
            dim = int(head[1])
            continue
        if head[0] == "order":
            if dim is None:
                raise ParseError("order before dim", lineno)
            order = tuple(head[1:])
            if len(order) != dim:
                raise ParseError(f"order names {len(order)} coordinates, expected {dim}", lineno)
            continue
        if dim is None:
            raise ParseError("inequality before dim line", lineno)
        label = None
        if ":" in line:
            label, line = (s.strip() for s in line.split(":", 1))
            if not label or " " in label:
                raise ParseError(f"bad label {label!r}", lineno)
        if "<=" not in line:
            raise ParseError("expected '<='", lineno)
        lhs, rhs = line.split("<=", 1)
        tokens = lhs.split()
        if len(tokens) != dim:
            raise ParseError(f"expected {dim} coefficients, got {len(tokens)}", lineno)
        try:
            coeffs = tuple(parse_rational(t) for t in tokens)
            rhs_val = parse_rational(rhs)
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        if not any(coeffs):
            raise ParseError("all-zero coefficients", lineno)
        ineqs.append(Inequality(coeffs, rhs_val))
        labels.append(label if label is not None else f"h{len(ineqs) - 1}")
    if dim is None:
        raise ParseError("missing dim line")
    if not ineqs:
        raise ParseError("empty inequality system")
    if len(set(labels)) != len(labels):
        raise ParseError("duplicate inequality labels")
    return HPolytope(dim, tuple(ineqs), tuple(labels), order)


def basis_budget() -> int:
    value = os.environ.get(BUDGET_ENV)
    return int(value) if value else DEFAULT_BASIS_BUDGET


def _a_ub(p: HPolytope):
    return [h.coeffs for h in p.inequalities], [h.rhs for h in p.inequalities]


def check_bounded(p: HPolytope) -> bool:
    """Maximize each of ``+-x_j``.  Returns False when the region is empty.

    Raises :class:`UnboundedError` if some coordinate is unbounded.
    """
    a_ub, b_ub = _a_ub(p)
    for j in range(p.dim):
        for sign in (1, -1):
            c = [Fraction(0)] * p.dim
            c[j] = Fraction(sign)
            res = lp.maximize_inequality(c, a_ub, b_ub)
            if res.status == lp.INFEASIBLE:
                return False
            if res.status == lp.UNBOUNDED:
                raise UnboundedError(f"{'+' if sign > 0 else '-'}x{j} is unbounded")
    return True


def _positively_spanning(p: HPolytope) -> bool:
    """Normals positively span the space, so the recession cone is trivial."""
    normals = [h.coeffs for h in p.inequalities]
    return rank(normals) == p.dim and positive_combination(normals) is not None


def incidence(p: HPolytope, x) -> frozenset:
    return frozenset(i for i, h in enumerate(p.inequalities) if h.tight(x))


def _int_solve(rows, n):
    """Bareiss on an integer augmented matrix.  Returns ``(num, det)`` with
    ``x = num / det``, or ``None`` when singular."""
    m = [list(r) for r in rows]
    prev = 1
    for k in range(n):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return None
            m[k], m[swap] = m[swap], m[k]
        pk = m[k]
        for i in range(k + 1, n):
            mi = m[i]
            mik = mi[k]
            m[i] = [(pk[k] * mi[j] - mik * pk[j]) // prev if j > k else 0 for j in range(n + 1)]
        prev = pk[k]
    d = m[n - 1][n - 1]
    # back substitution keeping everything over the common denominator d
    num = [0] * n
    for i in range(n - 1, -1, -1):
        acc = m[i][n] * d - sum(m[i][j] * num[j] for j in range(i + 1, n))
        num[i] = acc // m[i][i]
    return num, d


def _basis_vertex(ints, dim, basis):
    got = _int_solve([ints[i] for i in basis], dim)
    if got is None:
        return None
    num, d = got
    if d < 0:
        num, d = [-x for x in num], -d
    for row in ints:
        if sum(a * x for a, x in zip(row, num)) > row[dim] * d:
            return None
    return tuple(Fraction(x, d) for x in num)


def enumerate_vertices(p: HPolytope, budget: Optional[int] = None, threads: int = 1) -> VertexSet:
    """All vertices, by solving every ``dim``-subset of the inequalities.

    Incidence sets are recomputed against the whole system, so vertices on
    more than ``dim`` hyperplanes are reported with all of them.  The output
    is sorted lexicographically.
    """
    # a nonempty region without a trivial recession cone is unbounded, so the
    # per-coordinate LPs are only needed to report which case applies
    if not _positively_spanning(p) and not check_bounded(p):
        return VertexSet((), ())
    budget = basis_budget() if budget is None else budget
    nbases = math.comb(len(p), p.dim)
    if nbases > budget:
        raise BudgetError(f"{nbases} bases exceed the enumeration budget of {budget}")
    bases = itertools.combinations(range(len(p)), p.dim)
    # positive scaling keeps each half-space, so work in primitive integers
    ints = [h.canonical() for h in p.inequalities]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            found = set(pool.map(lambda b: _basis_vertex(ints, p.dim, b), bases, chunksize=64))
    else:
        found = {_basis_vertex(ints, p.dim, b) for b in bases}
    found.discard(None)
    points = tuple(sorted(found))
    return VertexSet(points, tuple(incidence(p, x) for x in points))


def incidence_table(p: HPolytope, vs: VertexSet, which: Sequence[int]) -> list:
    """Per vertex, one flag per requested inequality: True where it is tight."""
    for i in which:
        if not 0 <= i < len(p):
            raise IndexError(i)
    return [tuple(p.inequalities[i].tight(x) for i in which) for x in vs.points]


def find_redundant(p: HPolytope, vs: Optional[VertexSet] = None) -> set:
    """Indices of inequalities that do not define a facet.

    An inequality is a facet iff the vertices on it span a hyperplane and no
    earlier inequality describes the same half-space.
    """
    if vs is None:
        vs = enumerate_vertices(p)
    redundant = set()
    seen = {}
    for i, h in enumerate(p.inequalities):
        key = h.canonical()
        if key in seen:
            redundant.add(i)
            continue
        seen[key] = i
        contact = [x for x in vs.points if h.tight(x)]
        if affine_rank(contact) < p.dim - 1:
            redundant.add(i)
    return redundant


def slice(p: HPolytope, h: Inequality, label: str = "cut"):
    """Split ``p`` by the hyperplane of ``h``: ``(p & h <= rhs, p & h >= rhs)``.

    Both pieces carry the cutting hyperplane under the same label.
    """
    if h.dim != p.dim:
        raise DimensionError("slicing hyperplane has the wrong dimension")
    return p.with_inequality(h, label), p.with_inequality(h.flipped(), label)


def point_in_hull(points, q) -> bool:
    points = [as_point(v) for v in points]
    q = as_point(q)
    if not points:
        return False
    if any(len(v) != len(q) for v in points):
        raise DimensionError("points and query differ in dimension")
    k = len(points)
    a_eq = [[v[j] for v in points] for j in range(len(q))]
    a_eq.append([Fraction(1)] * k)
    b_eq = list(q) + [Fraction(1)]
    return lp.maximize([Fraction(0)] * k, a_eq, b_eq).status == lp.OPTIMAL


def _project(a, b, k, h_coeffs, h_rhs):
    """Restrict ``h`` to the hyperplane ``a.x = b`` after eliminating ``x_k``."""
    f = h_coeffs[k] / a[k]
    coeffs = tuple(h_coeffs[j] - f * a[j] for j in range(len(a)) if j != k)
    return coeffs, h_rhs - f * b


def polytope_volume(p: HPolytope, vs: Optional[VertexSet] = None) -> Fraction:
    """Volume by recursive coning from the vertex barycenter over each facet.

    Each facet is measured in the coordinate hyperplane obtained by dropping
    one coordinate with a nonzero normal entry; the projection factor cancels
    the Euclidean height, so everything stays rational.  This route shares
    nothing with the triangulation code and is used to check it.
    """
    if vs is None:
        vs = enumerate_vertices(p)
    if affine_rank(vs.points) < p.dim:
        return Fraction(0)
    ineqs = [(h.coeffs, h.rhs) for h in p.inequalities]
    ids = frozenset(range(len(vs.points)))
    memo = {}
    return _cone_volume(p.dim, ineqs, vs.points, ids, tuple(range(p.dim)), memo)


def _cone_volume(dim, ineqs, points, ids, coords, memo):
    key = (ids, coords)
    if key in memo:
        return memo[key]
    if dim == 0:
        return Fraction(1)
    pts = {i: points[i] for i in ids}
    apex = centroid(pts.values())
    total = Fraction(0)
    done = set()
    for a, b in ineqs:
        contact = frozenset(i for i, x in pts.items() if dot(a, x) == b)
        if contact in done or affine_rank(pts[i] for i in contact) != dim - 1:
            continue
        done.add(contact)
        k = next(j for j, c in enumerate(a) if c != 0)
        sub_ineqs = []
        for h_coeffs, h_rhs in ineqs:
            coeffs, rhs = _project(a, b, k, h_coeffs, h_rhs)
            if any(coeffs):
                sub_ineqs.append((coeffs, rhs))
        sub_points = dict.fromkeys(contact)
        for i in contact:
            sub_points[i] = pts[i][:k] + pts[i][k + 1:]
        facet = _cone_volume(
            dim - 1, sub_ineqs, sub_points, contact, coords[:k] + coords[k + 1:], memo
        )
        total += (b - dot(a, apex)) * facet / (dim * abs(a[k]))
    memo[key] = total
    return total


def hyperplane(coeffs: Iterable, rhs=0) -> Inequality:
    return Inequality(tuple(coeffs), rhs)

"""Coordinate-permutation symmetries of inequality systems."""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass

from polyvol.exact import DimensionError, as_point
from polyvol.hrep import BudgetError, HPolytope, Inequality

DEFAULT_SYMMETRY_BUDGET = math.factorial(8)


@dataclass(frozen=True, order=True)
class CoordinatePermutation:
    """``image[i]`` is the input coordinate that output coordinate ``i`` reads."""

    image: tuple

    def __post_init__(self):
        image = tuple(self.image)
        if sorted(image) != list(range(len(image))):
            raise ValueError(f"{image} is not a permutation of 0..{len(image) - 1}")
        object.__setattr__(self, "image", image)

    @property
    def dim(self) -> int:
        return len(self.image)

    @classmethod
    def identity(cls, n: int) -> "CoordinatePermutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, cycles, names) -> "CoordinatePermutation":
        """Build from cycles such as ``[("x12", "x23", "x31")]``.

        In a cycle ``(a b ...)`` the value of coordinate ``a`` moves to
        coordinate ``b``.
        """
        names = list(names)
        index = {name: i for i, name in enumerate(names)}
        image = list(range(len(names)))
        for cycle in cycles:
            ids = [index[c] for c in cycle]
            for src, dst in zip(ids, ids[1:] + ids[:1]):
                image[dst] = src
        return cls(tuple(image))

    @classmethod
    def parse(cls, text: str, names=None) -> "CoordinatePermutation":
        """Parse cycle notation over ``names`` or over 1-based indices."""
        cycles = [c.split() for c in re.findall(r"\(([^()]*)\)", text)]
        if names is None:
            n = max((int(v) for c in cycles for v in c), default=0)
            names = [str(i + 1) for i in range(n)]
        return cls.from_cycles(cycles, names)

    def __call__(self, v):
        return self.apply(v)

    def apply(self, v) -> tuple:
        if len(v) != self.dim:
            raise DimensionError("permutation and point differ in dimension")
        return tuple(v[j] for j in self.image)

    def compose(self, other: "CoordinatePermutation") -> "CoordinatePermutation":
        """``self`` after ``other``."""
        return CoordinatePermutation(tuple(other.image[j] for j in self.image))

    def inverse(self) -> "CoordinatePermutation":
        inv = [0] * self.dim
        for i, j in enumerate(self.image):
            inv[j] = i
        return CoordinatePermutation(tuple(inv))

    def order(self) -> int:
        g, k = self, 1
        ident = CoordinatePermutation.identity(self.dim)
        while g != ident:
            g, k = self.compose(g), k + 1
        return k

    def cycles(self) -> list:
        """Nontrivial cycles as index tuples, each starting at its smallest member."""
        moves = {src: dst for dst, src in enumerate(self.image)}
        seen, out = set(), []
        for start in range(self.dim):
            if start in seen or moves[start] == start:
                continue
            cyc, i = [], start
            while i not in seen:
                seen.add(i)
                cyc.append(i)
                i = moves[i]
            out.append(tuple(cyc))
        return out

    def format(self, names=None) -> str:
        names = list(names) if names else [str(i + 1) for i in range(self.dim)]
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(names[i] for i in c) + ")" for c in cycles)


def apply_to_point(g: CoordinatePermutation, v) -> tuple:
    return g.apply(as_point(v))


def apply_to_polytope(g: CoordinatePermutation, p: HPolytope) -> HPolytope:
    """Image of ``p``.  Permutation matrices are orthogonal, so each
    coefficient vector is permuted exactly like a point."""
    if g.dim != p.dim:
        raise DimensionError("permutation and polytope differ in dimension")
    ineqs = tuple(Inequality(g.apply(h.coeffs), h.rhs) for h in p.inequalities)
    return HPolytope(p.dim, ineqs, p.labels, p.order)


def inequality_set(p: HPolytope) -> frozenset:
    return frozenset(h.canonical() for h in p.inequalities)


def find_symmetries(p: HPolytope, budget: int = DEFAULT_SYMMETRY_BUDGET) -> list:
    """All coordinate permutations mapping the inequality set of ``p`` onto itself.

    Backtracking over output coordinates; coordinate ``i`` may only read a
    coordinate ``j`` whose column of canonical coefficients has the same
    multiset of values.
    """
    n = p.dim
    if math.factorial(n) > budget:
        raise BudgetError(f"{n}! candidate permutations exceed the budget of {budget}")
    target = inequality_set(p)
    rows = sorted(target)
    columns = [Counter(r[j] for r in rows) for j in range(n)]
    allowed = [[j for j in range(n) if columns[j] == columns[i]] for i in range(n)]

    found = []
    image = [None] * n
    used = [False] * n

    def extend(i):
        if i == n:
            g = CoordinatePermutation(tuple(image))
            if frozenset(g.apply(r[:n]) + r[n:] for r in rows) == target:
                found.append(g)
            return
        for j in allowed[i]:
            if not used[j]:
                used[j], image[i] = True, j
                extend(i + 1)
                used[j] = False

    extend(0)
    found.sort()
    _check_group(found, n)
    return found


def _check_group(elements, n):
    members = set(elements)
    if CoordinatePermutation.identity(n) not in members:
        raise AssertionError("symmetry set lacks the identity")
    for a in elements:
        if a.inverse() not in members:
            raise AssertionError(f"{a} has no inverse in the symmetry set")
        for b in elements:
            if a.compose(b) not in members:
                raise AssertionError("symmetry set is not closed under composition")


def certify_congruent(a, b, g: CoordinatePermutation) -> bool:
    """True iff ``g`` maps the vertex set ``a`` bijectively onto ``b``."""
    a = {as_point(v) for v in a}
    b = {as_point(v) for v in b}
    return len(a) == len(b) and {g.apply(v) for v in a} == b

"""Placing triangulations and the covering certificate.

Points are inserted one at a time.  A point outside the current hull is
joined to every boundary facet it sees; a point inside is skipped.  The
result is checked, not trusted: :func:`verify_covering` tests that every
simplex facet is either shared or on the container's boundary and that the
volumes add up.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from polyvol.exact import (
    DimensionError,
    affine_rank,
    as_point,
    centroid,
    det,
    format_rational,
    parse_rational,
    simplex_volume,
    sub,
)
from polyvol.hrep import HPolytope, polytope_volume


class FlatInputError(ValueError):
    """The points do not span the ambient space."""


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _orient(points, facet, x) -> int:
    return _sign(det([sub(points[i], x) for i in facet]))


def _facets_of(simplex):
    return [tuple(v for v in simplex if v != skip) for skip in simplex]


@dataclass(frozen=True)
class Triangulation:
    points: tuple
    simplices: tuple
    # boundary facet -> index of the simplex it belongs to
    boundary: dict = field(default_factory=dict, compare=False)
    witness: Optional[tuple] = None

    @property
    def dim(self) -> int:
        return len(self.points[0]) if self.points else 0

    @classmethod
    def from_simplices(cls, points, simplices) -> "Triangulation":
        """Wrap an explicit simplex list; facets used once form the boundary."""
        points = tuple(as_point(p) for p in points)
        simplices = tuple(tuple(sorted(s)) for s in simplices)
        owner = {}
        for k, s in enumerate(simplices):
            for f in _facets_of(s):
                owner.setdefault(f, []).append(k)
        boundary = {f: ks[0] for f, ks in owner.items() if len(ks) == 1}
        used = sorted({v for s in simplices for v in s})
        witness = centroid(points[i] for i in used) if used else None
        return cls(points, simplices, boundary, witness)

    def simplex_points(self, k: int):
        return [self.points[i] for i in self.simplices[k]]

    def to_text(self) -> str:
        lines = [f"points {len(self.points)} dim {self.dim}"]
        lines += [" ".join(format_rational(c) for c in p) for p in self.points]
        lines.append(f"simplices {len(self.simplices)}")
        lines += [" ".join(str(i) for i in s) for s in sorted(self.simplices)]
        return "\n".join(lines) + "\n"


def parse_triangulation(text: str) -> Triangulation:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    head = lines[0].split() if lines else []
    if len(head) != 4 or head[0] != "points" or head[2] != "dim":
        raise ValueError("expected 'points <k> dim <n>' header")
    k, n = int(head[1]), int(head[3])
    points = []
    for ln in lines[1:1 + k]:
        coords = ln.split()
        if len(coords) != n:
            raise ValueError(f"point {ln!r} does not have {n} coordinates")
        points.append(tuple(parse_rational(c) for c in coords))
    rest = lines[1 + k:]
    if len(points) != k or not rest or rest[0].split()[0] != "simplices":
        raise ValueError("expected 'simplices <m>' after the point list")
    m = int(rest[0].split()[1])
    simplices = [tuple(int(i) for i in ln.split()) for ln in rest[1:1 + m]]
    if len(simplices) != m:
        raise ValueError(f"expected {m} simplices, got {len(simplices)}")
    for s in simplices:
        if len(s) != n + 1 or any(not 0 <= i < k for i in s):
            raise ValueError(f"bad simplex {s}")
    return Triangulation.from_simplices(points, simplices)


def visible_facets(t: Triangulation, x) -> list:
    """Boundary facets whose hyperplane strictly separates ``x`` from the hull.

    A facet whose hyperplane passes through ``x`` is not visible.
    """
    if not t.simplices or t.witness is None:
        raise ValueError("empty triangulation")
    x = as_point(x)
    if len(x) != t.dim:
        raise DimensionError("query point has the wrong dimension")
    return sorted(
        f for f in t.boundary
        if _orient(t.points, f, x) * _orient(t.points, f, t.witness) < 0
    )


def _dedupe(points):
    seen = set()
    out = []
    for p in points:
        p = as_point(p)
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def _seed(points, n):
    chosen = [0]
    for i in range(1, len(points)):
        if affine_rank([points[j] for j in chosen + [i]]) == len(chosen):
            chosen.append(i)
            if len(chosen) == n + 1:
                return chosen
    raise FlatInputError(f"points span fewer than {n} dimensions")


def incremental_triangulation(points) -> Triangulation:
    """Triangulate ``conv(points)``, inserting points in the given order.

    The first affinely independent ``n + 1`` points (scanning forward) form
    the seed simplex; its centroid is the interior witness for every later
    visibility test.
    """
    points = _dedupe(points)
    if not points:
        raise FlatInputError("no points")
    n = len(points[0])
    if any(len(p) != n for p in points):
        raise DimensionError("points differ in dimension")
    seed = _seed(points, n)
    witness = centroid(points[i] for i in seed)
    simplices = [tuple(seed)]
    boundary = {f: 0 for f in _facets_of(simplices[0])}
    # orientation of the witness is fixed per facet; cache it
    inner = {f: _orient(points, f, witness) for f in boundary}

    seeded = set(seed)
    for v in (i for i in range(len(points)) if i not in seeded):
        x = points[v]
        visible = [f for f in boundary if _orient(points, f, x) * inner[f] < 0]
        if not visible:
            continue
        new_facets = {}
        for f in visible:
            del boundary[f]
            del inner[f]
            k = len(simplices)
            simplices.append(tuple(sorted(f + (v,))))
            for ridge in itertools.combinations(f, n - 1):
                g = tuple(sorted(ridge + (v,)))
                if g in new_facets:
                    del new_facets[g]
                else:
                    new_facets[g] = k
        for g, k in new_facets.items():
            boundary[g] = k
            inner[g] = _orient(points, g, witness)
    return Triangulation(tuple(points), tuple(simplices), boundary, witness)


def total_volume(t: Triangulation) -> Fraction:
    return sum((simplex_volume(t.simplex_points(k)) for k in range(len(t.simplices))), Fraction(0))


def facet_neighbors(t: Triangulation, p: HPolytope) -> list:
    """For each simplex, map each vertex id to what lies across the opposite facet.

    The value is ``("simplex", j)`` for a shared facet, ``("facet", labels)``
    for a facet lying in bounding hyperplanes of ``p`` and ``None`` otherwise.
    """
    owner = {}
    for k, s in enumerate(t.simplices):
        for f in _facets_of(s):
            owner.setdefault(f, []).append(k)
    out = []
    for k, s in enumerate(t.simplices):
        row = {}
        for v in s:
            f = tuple(i for i in s if i != v)
            others = [j for j in owner[f] if j != k]
            if others:
                row[v] = ("simplex", others[0]) if len(others) == 1 else ("simplices", tuple(others))
                continue
            labels = tuple(
                label for label, h in zip(p.labels, p.inequalities)
                if all(h.tight(t.points[i]) for i in f)
            )
            row[v] = ("facet", labels) if labels else None
        out.append(row)
    return out


@dataclass
class CoverReport:
    passed: bool
    volume: Fraction
    expected_volume: Fraction
    violations: list
    neighbors: list

    def lines(self) -> list:
        out = [
            f"{'PASS' if self.passed else 'FAIL'} covering certificate",
            f"simplex volume sum {format_rational(self.volume)}",
            f"polytope volume {format_rational(self.expected_volume)}",
        ]
        out += [f"violation: {v}" for v in self.violations]
        return out


def verify_covering(
    t: Triangulation, p: HPolytope, expected_volume: Optional[Fraction] = None
) -> CoverReport:
    """Check that the simplices of ``t`` tile ``p``.

    Every simplex must have positive volume, every facet must be shared with
    exactly one other simplex or lie in a bounding hyperplane of ``p``, and
    the volumes must sum to ``Vol(p)`` (computed independently unless given).
    """
    violations = []
    used = sorted({i for s in t.simplices for i in s})
    for i in used:
        if not p.contains(t.points[i]):
            violations.append(f"point {i} lies outside the polytope")
    volume = Fraction(0)
    for k in range(len(t.simplices)):
        vol = simplex_volume(t.simplex_points(k))
        if vol == 0:
            violations.append(f"simplex {k} {t.simplices[k]} is degenerate")
        volume += vol
    neighbors = facet_neighbors(t, p)
    for k, row in enumerate(neighbors):
        for v, what in row.items():
            f = tuple(i for i in t.simplices[k] if i != v)
            if what is None:
                violations.append(f"simplex {k} facet {f} (opposite {v}) is orphaned")
            elif what[0] == "simplices":
                violations.append(f"simplex {k} facet {f} is shared by simplices {what[1]}")
    if expected_volume is None:
        expected_volume = polytope_volume(p)
    if volume != expected_volume:
        violations.append(
            f"volume sum {format_rational(volume)} != polytope volume {format_rational(expected_volume)}"
        )
    return CoverReport(not violations, volume, expected_volume, violations, neighbors)

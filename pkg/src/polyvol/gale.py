"""Planar Gale diagrams of n-polytopes with n + 3 facets.

Facet ``i`` gets a vector ``a_i`` in the plane.  A set ``J`` of facets is
exactly the facet set of a nonempty face iff the origin lies in the relative
interior of ``conv{a_j : j not in J}``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from polyvol.exact import centroid, dot, nullspace, positive_combination
from polyvol.hrep import HPolytope, enumerate_vertices, find_redundant, point_in_hull


class CodimensionError(ValueError):
    """The polytope does not have exactly dim + 3 facets."""


class RedundancyError(ValueError):
    """The system contains inequalities that are not facets."""


@dataclass(frozen=True)
class GaleDiagram:
    vectors: tuple
    facet_labels: tuple

    def __post_init__(self):
        if len(self.vectors) != len(self.facet_labels):
            raise ValueError("one vector per facet label")

    def vector(self, label: str) -> tuple:
        return self.vectors[self.facet_labels.index(label)]

    def to_text(self) -> str:
        return "".join(f"{lab} {x} {y}\n" for lab, (x, y) in zip(self.facet_labels, self.vectors))


def _primitive(v) -> tuple:
    den = math.lcm(*(Fraction(c).denominator for c in v))
    ints = [int(Fraction(c) * den) for c in v]
    g = math.gcd(*ints)
    return tuple(c // g for c in ints) if g else tuple(ints)


def gale_matrix(p: HPolytope, vs=None) -> list:
    """Rows of the ``(n + 1) x (n + 3)`` matrix with columns ``(a_i, 1)``.

    ``a_i`` is facet ``i`` rewritten as ``a_i . y <= 1`` about the vertex
    barycenter.
    """
    vs = enumerate_vertices(p) if vs is None else vs
    center = centroid(vs.points)
    columns = []
    for h in p.inequalities:
        r = h.rhs - dot(h.coeffs, center)
        columns.append(tuple(c / r for c in h.coeffs) + (Fraction(1),))
    return [[col[k] for col in columns] for k in range(p.dim + 1)]


def gale_transform(p: HPolytope) -> GaleDiagram:
    if len(p) != p.dim + 3:
        raise CodimensionError(f"{len(p)} facets in dimension {p.dim}; need {p.dim + 3}")
    vs = enumerate_vertices(p)
    redundant = find_redundant(p, vs)
    if redundant:
        names = ", ".join(p.labels[i] for i in sorted(redundant))
        raise RedundancyError(f"redundant inequalities ({names}); remove them with find_redundant first")
    kernel = nullspace(gale_matrix(p, vs))
    assert len(kernel) == 2, f"kernel has dimension {len(kernel)}"
    vectors = tuple(_primitive((kernel[0][i], kernel[1][i])) for i in range(len(p)))
    assert all(any(v) for v in vectors), "zero Gale vector for an irredundant bounded polytope"
    return GaleDiagram(vectors, p.labels)


def parse_gale(text: str) -> GaleDiagram:
    labels, vectors = [], []
    for line in text.splitlines():
        parts = line.split("#", 1)[0].split()
        if not parts:
            continue
        if len(parts) != 3:
            raise ValueError(f"expected 'label x y', got {line!r}")
        labels.append(parts[0])
        vectors.append((int(parts[1]), int(parts[2])))
    return GaleDiagram(tuple(vectors), tuple(labels))


def _complement(g: GaleDiagram, j) -> list:
    j = set(j)
    unknown = j - set(g.facet_labels)
    if unknown:
        raise KeyError(f"unknown facet labels: {sorted(unknown)}")
    return [v for lab, v in zip(g.facet_labels, g.vectors) if lab not in j]


def is_face(g: GaleDiagram, j, relative: bool = True) -> bool:
    """Does the facet set ``j`` cut out a face?

    With ``relative=True`` (the default) the answer is whether ``j`` is
    exactly the set of facets containing some nonempty face.  With
    ``relative=False`` the plain containment ``0 in conv(complement)`` is
    tested, which holds iff the facets in ``j`` have a common point.
    """
    rest = _complement(g, j)
    if not rest:
        return False
    if relative:
        return positive_combination(rest) is not None
    return _origin_in_hull(rest)


def _origin_in_hull(vectors) -> bool:
    zero = [Fraction(0)] * 2
    return point_in_hull(vectors, zero)


def vertex_sets_from_gale(g: GaleDiagram) -> list:
    """Facet sets of the vertices: the minimal complements holding the origin
    in their relative interior, turned back into facet sets."""
    labels = g.facet_labels
    index = range(len(labels))
    good = []
    for k in range(1, len(labels) + 1):
        for comp in itertools.combinations(index, k):
            comp = frozenset(comp)
            if any(c <= comp for c in good):
                continue
            if positive_combination([g.vectors[i] for i in sorted(comp)]) is not None:
                good.append(comp)
    out = [frozenset(labels[i] for i in index if i not in comp) for comp in good]
    return sorted(out, key=lambda s: sorted(s))

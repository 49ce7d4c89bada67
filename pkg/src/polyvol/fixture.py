"""The six-dimensional polytope P, its named points and decomposition data,
and the end-to-end checks behind ``polyvol verify --paper``.

Point names use a letter plus up to two coordinate-index pairs.  The pairs
are unordered (``T21_12`` and ``T12_21`` are the same point) and
:func:`canonical_label` sorts them.
"""

from __future__ import annotations

import math
import re
import time
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from polyvol.exact import as_point, format_rational, simplex_volume
from polyvol.gale import gale_transform, vertex_sets_from_gale
from polyvol.hrep import (
    HPolytope,
    Inequality,
    enumerate_vertices,
    find_redundant,
    incidence_table,
    parse_hrep,
    polytope_volume,
    slice,
)
from polyvol.symmetry import (
    CoordinatePermutation,
    apply_to_polytope,
    certify_congruent,
    find_symmetries,
)
from polyvol.triangulate import (
    Triangulation,
    facet_neighbors,
    incremental_triangulation,
    total_volume,
    verify_covering,
)

COORDS = ("x12", "x23", "x31", "x13", "x32", "x21")
F = Fraction

# name -> (coordinates, tight on alpha1, alpha2, alpha3)
VERTEX_TABLE = {
    "O": ((0, 0, 0, 0, 0, 0), (False, False, False)),
    "Q21_23": ((0, F(1, 2), 0, 0, 0, F(1, 2)), (True, True, True)),
    "Q31_32": ((0, 0, F(1, 2), 0, F(1, 2), 0), (True, True, True)),
    "Q12_13": ((F(1, 2), 0, 0, F(1, 2), 0, 0), (True, True, True)),
    "P12": ((F(1, 2), 0, 0, 0, 0, 0), (False, True, False)),
    "P23": ((0, F(1, 2), 0, 0, 0, 0), (False, False, True)),
    "P31": ((0, 0, F(1, 2), 0, 0, 0), (True, False, False)),
    "P13": ((0, 0, 0, F(1, 2), 0, 0), (False, False, True)),
    "P32": ((0, 0, 0, 0, F(1, 2), 0), (False, True, False)),
    "P21": ((0, 0, 0, 0, 0, F(1, 2)), (True, False, False)),
    "R1": ((F(1, 3), F(1, 3), F(1, 3), 0, 0, 0), (True, True, True)),
    "R2": ((0, 0, 0, F(1, 3), F(1, 3), F(1, 3)), (True, True, True)),
    "T12_21": ((F(1, 3), 0, 0, 0, 0, F(1, 3)), (True, True, False)),
    "T23_32": ((0, F(1, 3), 0, 0, F(1, 3), 0), (False, True, True)),
    "T13_31": ((0, 0, F(1, 3), F(1, 3), 0, 0), (True, False, True)),
    "V21_32": ((0, 0, 0, 0, F(1, 4), F(1, 2)), (True, True, False)),
    "V12_31": ((F(1, 2), 0, F(1, 4), 0, 0, 0), (True, True, False)),
    "V13_21": ((0, 0, 0, F(1, 2), 0, F(1, 4)), (True, False, True)),
    "V23_31": ((0, F(1, 4), F(1, 2), 0, 0, 0), (True, False, True)),
    "V13_32": ((0, 0, 0, F(1, 4), F(1, 2), 0), (False, True, True)),
    "V12_23": ((F(1, 4), F(1, 2), 0, 0, 0, 0), (False, True, True)),
}

K_POINT = ("K21_31", (0, 0, F(1, 4), 0, 0, F(1, 4)))

SIGMA = Inequality((1, 1, 1, 1, 1, 1), 1)
THETA1 = Inequality((1, -2, 1, -1, -1, 2), 0)
THETA2 = Inequality((1, 1, -2, -1, 2, -1), 0)
DELTA = Inequality((1, 1, 1, -1, -1, -1), 0)

PHI = CoordinatePermutation.from_cycles([("x12", "x23", "x31"), ("x13", "x21", "x32")], COORDS)
PSI = CoordinatePermutation.from_cycles([("x12", "x13"), ("x31", "x21"), ("x32", "x23")], COORDS)

P1_VERTICES = (
    "Q21_23", "T12_21", "P21", "R1", "V21_32", "V13_21",
    "Q31_32", "T13_31", "P31", "R2", "V23_31", "V12_31",
    "Q12_13", "O",
)
P11_VERTICES = ("P31", "R1", "V23_31", "V12_31", "O", "Q21_23", "Q31_32", "Q12_13", "T12_21", "T13_31", "K21_31")
P12_VERTICES = ("P21", "R2", "V21_32", "V13_21", "O", "Q21_23", "Q31_32", "Q12_13", "T12_21", "T13_31", "K21_31")

# simplex vertices, what lies across the facet opposite each vertex, volume
SIMPLEX_TABLE = (
    (("O", "P31", "Q31_32", "Q21_23", "T13_31", "T12_21", "K21_31"),
     ("alpha1", "delta", "pi32", "pi23", "pi13", "pi12", 2),
     F(1, 9) * F(2, 4**3) / 720),
    (("O", "P31", "Q31_32", "Q21_23", "T13_31", "T12_21", "Q12_13"),
     ("alpha1", "delta", "pi32", "pi23", 3, 4, 1),
     F(1, 9) * F(1, 4**2) / 720),
    (("O", "P31", "Q31_32", "Q21_23", "R1", "T12_21", "Q12_13"),
     ("alpha1", "theta2", "pi32", 5, 2, 4, "pi13"),
     F(1, 9) * F(2, 4**2) / 720),
    (("O", "P31", "Q31_32", "Q21_23", "T13_31", "R1", "Q12_13"),
     ("alpha1", "theta1", "pi32", "pi21", 3, 2, 6),
     F(1, 9) * F(1, 4**2) / 720),
    (("O", "P31", "Q31_32", "V12_31", "R1", "T12_21", "Q12_13"),
     ("alpha1", "theta2", "pi32", 3, "pi23", "pi21", "pi13"),
     F(1, 9) * F(1, 4**2) / 720),
    (("O", "P31", "Q31_32", "Q21_23", "T13_31", "R1", "V23_31"),
     ("alpha1", "theta1", "pi32", "pi21", "pi13", "pi12", 4),
     F(1, 9) * F(2, 4**3) / 720),
)

P_VOLUME = F(1, 4 * math.factorial(6))

_LABEL_RE = re.compile(r"^([A-Za-z])_?\{?(\d\d)?\}?(?:[_^]\{?(\d\d)\}?)?$")


def canonical_label(name: str) -> str:
    """``T21^12``, ``T_{21}^{12}`` and ``T12_21`` all become ``T12_21``."""
    m = _LABEL_RE.match(name.strip())
    if not m:
        return name
    letter, a, b = m.groups()
    if a and b:
        a, b = sorted((a, b))
        return f"{letter}{a}_{b}"
    return letter + (a or "")


def points() -> dict:
    """All named points: the 21 vertices of P plus K."""
    out = {name: as_point(c) for name, (c, _) in VERTEX_TABLE.items()}
    out[K_POINT[0]] = as_point(K_POINT[1])
    return out


def point(name: str) -> tuple:
    return points()[canonical_label(name)]


def fixture_path(name: str):
    return resources.files("polyvol") / "fixtures" / name


def polytope_p() -> HPolytope:
    return parse_hrep(fixture_path("paper-P.hrep").read_text())


@dataclass(frozen=True)
class Decomposition:
    p: HPolytope
    p1: HPolytope
    p2: HPolytope
    p3: HPolytope
    p11: HPolytope
    p12: HPolytope


def decomposition() -> Decomposition:
    """P1 = P & theta1 >= 0 & theta2 <= 0; P2, P3 its images under phi, phi^2;
    delta >= 0 and delta <= 0 split P1 into P1^1 (holding P31) and P1^2."""
    p = polytope_p()
    p1 = slice(slice(p, THETA1, "theta1")[1], THETA2, "theta2")[0]
    p2 = apply_to_polytope(PHI, p1)
    p3 = apply_to_polytope(PHI, p2)
    p12, p11 = slice(p1, DELTA, "delta")
    return Decomposition(p, p1, p2, p3, p11, p12)


def simplex_table_triangulation() -> Triangulation:
    pts = points()
    names = sorted({n for verts, _, _ in SIMPLEX_TABLE for n in verts})
    ids = {n: i for i, n in enumerate(names)}
    return Triangulation.from_simplices(
        [pts[n] for n in names], [[ids[n] for n in verts] for verts, _, _ in SIMPLEX_TABLE]
    ), names


def simplex_table_mismatches(t: Triangulation, names, p11: HPolytope) -> list:
    """Mismatches between computed facet partners and the tabulated ones."""
    ids = {n: i for i, n in enumerate(names)}
    # from_simplices sorts vertex ids; map simplex by its vertex set
    by_set = {frozenset(s): k for k, s in enumerate(t.simplices)}
    computed = facet_neighbors(t, p11)
    mismatches = []
    for row, (verts, across, _) in enumerate(SIMPLEX_TABLE, start=1):
        k = by_set[frozenset(ids[n] for n in verts)]
        for v, expected in zip(verts, across):
            got = computed[k][ids[v]]
            if isinstance(expected, int):
                want_set = frozenset(ids[n] for n in SIMPLEX_TABLE[expected - 1][0])
                ok = got is not None and got[0] == "simplex" and t.simplices[got[1]] == tuple(sorted(want_set))
            else:
                ok = got is not None and got[0] == "facet" and expected in got[1]
            if not ok:
                mismatches.append(f"Delta{row} opposite {v}: expected {expected}, got {got}")
    return mismatches


@dataclass
class Claim:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def _vertex_names(vs_points) -> set:
    by_coords = {v: k for k, v in points().items()}
    return {by_coords.get(v, "?") for v in vs_points}


def check_vertices() -> Claim:
    start = time.perf_counter()
    p = polytope_p()
    vs = enumerate_vertices(p)
    elapsed = time.perf_counter() - start
    expected = {as_point(c) for c, _ in VERTEX_TABLE.values()}
    same = set(vs.points) == expected and len(vs) == 21
    which = [p.index(a) for a in ("alpha1", "alpha2", "alpha3")]
    flags = dict(zip(vs.points, incidence_table(p, vs, which)))
    bad = [n for n, (c, f) in VERTEX_TABLE.items() if flags.get(as_point(c)) != f]
    ok = same and not bad and elapsed < 1
    timing = "within 1s" if elapsed < 1 else "over 1s"
    return Claim("vertices", ok, f"{len(vs)} vertices, alpha flag mismatches: {', '.join(bad) or 'none'}, {timing}")


def check_volume() -> Claim:
    start = time.perf_counter()
    p = polytope_p()
    vol = total_volume(incremental_triangulation(enumerate_vertices(p).points))
    elapsed = time.perf_counter() - start
    ok = vol == P_VOLUME and elapsed < 5
    timing = "within 5s" if elapsed < 5 else "over 5s"
    return Claim("volume", ok, f"Vol(P) = {format_rational(vol)}, expected 1/2880, {timing}")


def check_sigma() -> Claim:
    p = polytope_p().with_inequality(SIGMA, "sigma")
    red = {p.labels[i] for i in find_redundant(p)}
    return Claim("sigma-redundant", red == {"sigma"}, f"redundant: {sorted(red)}")


def check_decomposition(d: Decomposition) -> Claim:
    v1 = enumerate_vertices(d.p1)
    v11 = enumerate_vertices(d.p11)
    v12 = enumerate_vertices(d.p12)
    vol1 = total_volume(incremental_triangulation(v1.points))
    vol11 = total_volume(incremental_triangulation(v11.points))
    vol12 = total_volume(incremental_triangulation(v12.points))
    pts = points()
    sets_ok = (
        set(v1.points) == {pts[n] for n in P1_VERTICES}
        and set(v11.points) == {pts[n] for n in P11_VERTICES}
        and set(v12.points) == {pts[n] for n in P12_VERTICES}
    )
    ok = sets_ok and vol1 == P_VOLUME / 3 and vol11 == vol12 == P_VOLUME / 6
    return Claim(
        "decomposition",
        ok,
        f"Vol(P1) = {format_rational(vol1)}, Vol(P1^1) = {format_rational(vol11)}, "
        f"Vol(P1^2) = {format_rational(vol12)}, vertex counts {len(v1)}/{len(v11)}/{len(v12)}",
    )


def check_simplex_table(d: Decomposition) -> Claim:
    t, names = simplex_table_triangulation()
    pts = points()
    vols = [simplex_volume([pts[n] for n in verts]) for verts, _, _ in SIMPLEX_TABLE]
    vols_ok = vols == [v for _, _, v in SIMPLEX_TABLE]
    total = sum(vols, Fraction(0))
    report = verify_covering(t, d.p11)
    mismatches = simplex_table_mismatches(t, names, d.p11)
    ok = vols_ok and total == F(1, 24) / 720 and report.passed and not mismatches
    detail = f"sum {format_rational(total)}, covering {'PASS' if report.passed else 'FAIL'}"
    if mismatches:
        detail += "; " + "; ".join(mismatches)
    if not vols_ok:
        detail += "; volumes " + ", ".join(format_rational(v) for v in vols)
    return Claim("simplex-table", ok, detail)


def check_symmetry(d: Decomposition) -> Claim:
    group = find_symmetries(d.p)
    v1 = enumerate_vertices(d.p1).points
    v2 = enumerate_vertices(d.p2).points
    v11 = enumerate_vertices(d.p11).points
    v12 = enumerate_vertices(d.p12).points
    vol11 = total_volume(incremental_triangulation(v11))
    ok = (
        len(group) == 6
        and PHI in group
        and PSI in group
        and certify_congruent(v1, v2, PHI)
        and certify_congruent(v11, v12, PSI)
        and 6 * vol11 == P_VOLUME
    )
    return Claim("symmetry", ok, f"group order {len(group)}, 6*Vol(P1^1) = {format_rational(6 * vol11)}")


def check_gale() -> Claim:
    p = polytope_p()
    vs = enumerate_vertices(p)
    direct = {frozenset(p.labels[i] for i in inc) for inc in vs.incidences}
    from_gale = vertex_sets_from_gale(gale_transform(p))
    ok = len(from_gale) == 21 and set(from_gale) == direct
    return Claim("gale", ok, f"{len(from_gale)} co-facet sets from the diagram, {len(direct)} from enumeration")


def check_fixture() -> Claim:
    vs = enumerate_vertices(polytope_p())
    ok = set(vs.points) == {as_point(c) for c, _ in VERTEX_TABLE.values()}
    vol = polytope_volume(polytope_p(), vs)
    match = "match" if ok else "differ from"
    return Claim("fixture", ok and vol == P_VOLUME, f"named vertices {match} enumeration, cone-sum volume {format_rational(vol)}")


def verify_all() -> list:
    d = decomposition()
    return [
        check_fixture(),
        check_vertices(),
        check_volume(),
        check_sigma(),
        check_decomposition(d),
        check_simplex_table(d),
        check_symmetry(d),
        check_gale(),
    ]

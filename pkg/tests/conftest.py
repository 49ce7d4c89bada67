import itertools
import random
from fractions import Fraction

import pytest

from polyvol import fixture
from polyvol.exact import nullspace
from polyvol.hrep import (
    HPolytope,
    Inequality,
    UnboundedError,
    check_bounded,
    enumerate_vertices,
    find_redundant,
)


def cofactor_det(m):
    """Laplace expansion along the first row; slow, but shares no code with Bareiss."""
    m = [list(r) for r in m]
    if len(m) == 1:
        return Fraction(m[0][0])
    return sum(
        (-1) ** j * m[0][j] * cofactor_det([r[:j] + r[j + 1:] for r in m[1:]])
        for j in range(len(m))
        if m[0][j]
    ) or Fraction(0)


def hull_hrep(points):
    """H-representation of conv(points) by brute force over n-subsets."""
    points = [tuple(Fraction(c) for c in p) for p in points]
    n = len(points[0])
    seen = set()
    ineqs = []
    for subset in itertools.combinations(points, n):
        kernel = nullspace([list(p) + [Fraction(-1)] for p in subset])
        if len(kernel) != 1:
            continue
        normal, rhs = kernel[0][:n], kernel[0][n]
        if not any(normal):
            continue
        vals = [sum(a * x for a, x in zip(normal, p)) - rhs for p in points]
        if all(v <= 0 for v in vals):
            h = Inequality(normal, rhs)
        elif all(v >= 0 for v in vals):
            h = Inequality(tuple(-a for a in normal), -rhs)
        else:
            continue
        if h.canonical() not in seen:
            seen.add(h.canonical())
            ineqs.append(h)
    return HPolytope(n, tuple(ineqs))


def random_rational(rng):
    return Fraction(rng.randint(-3, 3), rng.randint(1, 4))


def random_point_set(rng, dim, max_points=12):
    """At least dim + 1 points spanning the space, coordinates in {-3..3}/{1..4}."""
    from polyvol.exact import affine_rank

    while True:
        k = rng.randint(dim + 1, max_points)
        pts = [tuple(random_rational(rng) for _ in range(dim)) for _ in range(k)]
        if affine_rank(pts) == dim:
            return pts


def random_simple_hrep(rng, dim, facets, simple=False):
    """A bounded, irredundant system ``a_i . x <= 1`` with small integer normals.

    With ``simple=True`` every vertex also lies on exactly ``dim`` facets.
    """
    while True:
        normals = [[rng.randint(-3, 3) for _ in range(dim)] for _ in range(facets)]
        if any(not any(a) for a in normals):
            continue
        p = HPolytope(dim, tuple(_ineq(a, 1) for a in normals))
        try:
            check_bounded(p)
        except UnboundedError:
            continue
        if find_redundant(p):
            continue
        if simple and any(len(inc) != dim for inc in enumerate_vertices(p).incidences):
            continue
        return p


def _ineq(coeffs, rhs):
    return Inequality(tuple(Fraction(c) for c in coeffs), Fraction(rhs))


def cube(n=3):
    ineqs = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        ineqs.append(_ineq(e, 1))
        ineqs.append(_ineq([-c for c in e], 0))
    return HPolytope(n, tuple(ineqs))


def unit_square():
    return HPolytope(
        2,
        (_ineq((1, 0), 1), _ineq((0, 1), 1), _ineq((-1, 0), 0), _ineq((0, -1), 0)),
        ("right", "top", "left", "bottom"),
    )


@pytest.fixture(scope="session")
def poly_p():
    return fixture.polytope_p()


@pytest.fixture(scope="session")
def decomp():
    return fixture.decomposition()


@pytest.fixture(scope="session")
def named():
    return fixture.points()


@pytest.fixture
def rng():
    return random.Random(20261016)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, "rep_" + rep.when, rep)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)

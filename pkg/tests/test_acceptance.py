"""Exit criteria.  Each test records one PASS/FAIL line, printed in the
terminal summary.  All comparisons are exact; runtime limits are wall-clock."""

import io
import random
import time
from fractions import Fraction

import pytest

from polyvol import fixture
from polyvol.cli import run
from polyvol.exact import as_point, parse_rational, simplex_volume
from polyvol.gale import gale_transform, vertex_sets_from_gale
from polyvol.hrep import enumerate_vertices, polytope_volume
from polyvol.symmetry import certify_congruent, find_symmetries
from polyvol.triangulate import incremental_triangulation, total_volume, verify_covering

from conftest import hull_hrep, random_point_set

RESULTS = []
P_FILE = str(fixture.fixture_path("paper-P.hrep"))
SIGMA_FILE = str(fixture.fixture_path("paper-P-sigma.hrep"))


@pytest.fixture
def record(request):
    name = request.node.name
    state = {"detail": ""}
    yield state
    passed = request.node.rep_call.passed if hasattr(request.node, "rep_call") else False
    RESULTS.append(f"{'PASS' if passed else 'FAIL'} {name}: {state['detail']}")


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue()


def test_criterion_1_vertices(record):
    start = time.perf_counter()
    code, out = cli("vertices", P_FILE)
    elapsed = time.perf_counter() - start
    got = {}
    for line in out.splitlines():
        coords, labels = line.split(" [")
        got[tuple(parse_rational(c) for c in coords.split())] = set(labels.rstrip("]").split())
    table = {as_point(c): flags for c, flags in fixture.VERTEX_TABLE.values()}
    record["detail"] = f"{len(got)} vertices in {elapsed:.2f}s"
    assert code == 0
    assert set(got) == set(table) and len(got) == 21
    for v, flags in table.items():
        assert tuple(f"alpha{k}" in got[v] for k in (1, 2, 3)) == flags
    assert elapsed < 1


def test_criterion_2_volume(record):
    start = time.perf_counter()
    code, out = cli("volume", P_FILE)
    elapsed = time.perf_counter() - start
    record["detail"] = f"{out.strip()} in {elapsed:.2f}s"
    assert code == 0
    assert Fraction(out.strip()) == Fraction(1, 4 * 720) == Fraction(1, 2880)
    assert elapsed < 5


def test_criterion_3_sigma(record):
    code, out = cli("redundant", SIGMA_FILE)
    record["detail"] = f"redundant: {out.split()}"
    assert code == 0
    assert out.split() == ["sigma"]


def test_criterion_4_decomposition(record, decomp, named):
    def vol(p):
        return total_volume(incremental_triangulation(enumerate_vertices(p).points))

    v1, v11, v12 = vol(decomp.p1), vol(decomp.p11), vol(decomp.p12)
    # exact division of the total by 3 and by 6
    assert Fraction(1, 2880) / 3 == Fraction(1, 8640)
    assert Fraction(1, 2880) / 6 == Fraction(1, 17280)
    record["detail"] = f"Vol(P1)={v1}, Vol(P1^1)={v11}, Vol(P1^2)={v12}"
    assert v1 == Fraction(1, 8640)
    assert v11 == v12 == Fraction(1, 17280)
    assert set(enumerate_vertices(decomp.p1).points) == {named[n] for n in fixture.P1_VERTICES}
    assert set(enumerate_vertices(decomp.p11).points) == {named[n] for n in fixture.P11_VERTICES}
    assert set(enumerate_vertices(decomp.p12).points) == {named[n] for n in fixture.P12_VERTICES}


def test_criterion_5_simplex_table(record, decomp, named):
    expected = [
        Fraction(1, 9) * Fraction(2, 4**3) / 720,
        Fraction(1, 9) * Fraction(1, 4**2) / 720,
        Fraction(1, 9) * Fraction(2, 4**2) / 720,
        Fraction(1, 9) * Fraction(1, 4**2) / 720,
        Fraction(1, 9) * Fraction(1, 4**2) / 720,
        Fraction(1, 9) * Fraction(2, 4**3) / 720,
    ]
    vols = [simplex_volume([named[n] for n in verts]) for verts, _, _ in fixture.SIMPLEX_TABLE]
    t, names = fixture.simplex_table_triangulation()
    report = verify_covering(t, decomp.p11)
    mismatches = fixture.simplex_table_mismatches(t, names, decomp.p11)
    record["detail"] = f"sum {sum(vols)}, covering {'PASS' if report.passed else 'FAIL'}, {len(mismatches)} neighbor mismatches"
    assert vols == expected
    assert sum(vols) == Fraction(1, 24) / 720
    assert report.passed, report.violations
    assert mismatches == []


def test_criterion_6_symmetry(record, decomp):
    group = find_symmetries(decomp.p)
    v = {name: enumerate_vertices(getattr(decomp, name)).points for name in ("p1", "p2", "p11", "p12")}
    vol11 = total_volume(incremental_triangulation(v["p11"]))
    vol = total_volume(incremental_triangulation(enumerate_vertices(decomp.p).points))
    record["detail"] = f"order {len(group)}, 6*Vol(P1^1)={6 * vol11}"
    assert len(group) == 6
    assert fixture.PHI in group and fixture.PSI in group
    assert certify_congruent(v["p1"], v["p2"], fixture.PHI)
    assert certify_congruent(v["p11"], v["p12"], fixture.PSI)
    assert 6 * vol11 == vol == Fraction(1, 2880)


def test_criterion_7_gale(record, poly_p):
    from_gale = vertex_sets_from_gale(gale_transform(poly_p))
    vs = enumerate_vertices(poly_p)
    direct = {frozenset(poly_p.labels[i] for i in inc) for inc in vs.incidences}
    record["detail"] = f"{len(from_gale)} sets from the diagram"
    assert len(from_gale) == 21
    assert set(from_gale) == direct


def test_criterion_8_robustness(record, poly_p):
    start = time.perf_counter()
    pts = list(enumerate_vertices(poly_p).points)
    p_volume = polytope_volume(poly_p)
    rng = random.Random(8)
    for _ in range(20):
        rng.shuffle(pts)
        t = incremental_triangulation(pts)
        assert total_volume(t) == Fraction(1, 2880)
        report = verify_covering(t, poly_p, expected_volume=p_volume)
        assert report.passed, report.violations
    count = 0
    for _ in range(100):
        dim = rng.randint(2, 4)
        cloud = random_point_set(rng, dim, 12)
        hull = hull_hrep(cloud)
        t = incremental_triangulation(cloud)
        report = verify_covering(t, hull)
        assert report.passed, report.violations
        shuffled = cloud[:]
        rng.shuffle(shuffled)
        assert total_volume(incremental_triangulation(shuffled)) == total_volume(t)
        count += 1
    elapsed = time.perf_counter() - start
    record["detail"] = f"20 orders of P, {count} random polytopes, {elapsed:.1f}s"
    assert elapsed < 60


def test_criterion_9_verify_bundled(record):
    code, out = cli("verify", "--paper")
    lines = out.splitlines()
    record["detail"] = f"exit {code}, {sum(l.startswith('PASS') for l in lines)}/{len(lines)} PASS lines"
    assert code == 0
    assert lines and all(l.startswith("PASS ") for l in lines)

import pytest

from polyvol import fixture
from polyvol.exact import DimensionError
from polyvol.fixture import COORDS, PHI, PSI
from polyvol.hrep import BudgetError, enumerate_vertices, parse_hrep
from polyvol.symmetry import (
    CoordinatePermutation,
    apply_to_point,
    apply_to_polytope,
    certify_congruent,
    find_symmetries,
    inequality_set,
)
from polyvol.triangulate import incremental_triangulation, total_volume

from conftest import cube


def labelled_set(p):
    return {lab: h.canonical() for lab, h in zip(p.labels, p.inequalities)}


def vol(p):
    return total_volume(incremental_triangulation(enumerate_vertices(p).points))


class TestPermutation:
    def test_identity(self, named):
        ident = CoordinatePermutation.identity(6)
        assert apply_to_point(ident, named["R1"]) == named["R1"]

    def test_phi_order_three(self, named):
        p31 = named["P31"]
        once = apply_to_point(PHI, p31)
        assert once in (named["P12"], named["P23"])
        assert apply_to_point(PHI, apply_to_point(PHI, once)) == p31
        assert PHI.order() == 3 and PSI.order() == 2

    def test_psi_swaps_halves(self, named):
        images = {apply_to_point(PSI, named[n]) for n in fixture.P11_VERTICES}
        assert images == {named[n] for n in fixture.P12_VERTICES}
        assert apply_to_point(PSI, named["Q12_13"]) == named["Q12_13"]
        assert apply_to_point(PSI, named["O"]) == named["O"]

    def test_cycle_text_round_trip(self):
        text = PHI.format(COORDS)
        assert text == "(x12 x23 x31)(x13 x21 x32)"
        assert CoordinatePermutation.parse(text, COORDS) == PHI
        assert CoordinatePermutation.parse(PSI.format()) == PSI

    def test_not_a_permutation(self):
        with pytest.raises(ValueError):
            CoordinatePermutation((0, 0, 1))

    def test_dimension_mismatch(self, poly_p):
        with pytest.raises(DimensionError):
            apply_to_point(PHI, (1, 2))
        with pytest.raises(DimensionError):
            apply_to_polytope(CoordinatePermutation.identity(3), poly_p)


class TestPolytopeAction:
    def test_phi_cycles_alphas(self, poly_p):
        before = labelled_set(poly_p)
        after = labelled_set(apply_to_polytope(PHI, poly_p))
        assert set(after.values()) == set(before.values())
        assert after["alpha1"] == before["alpha2"]
        assert after["alpha2"] == before["alpha3"]
        assert after["alpha3"] == before["alpha1"]

    def test_psi_fixes_alpha1(self, poly_p):
        before = labelled_set(poly_p)
        after = labelled_set(apply_to_polytope(PSI, poly_p))
        assert set(after.values()) == set(before.values())
        assert after["alpha1"] == before["alpha1"]
        assert after["alpha2"] == before["alpha3"] and after["alpha3"] == before["alpha2"]

    def test_identity(self, poly_p):
        assert apply_to_polytope(CoordinatePermutation.identity(6), poly_p) == poly_p


class TestFindSymmetries:
    def test_polytope_p(self, poly_p):
        group = find_symmetries(poly_p)
        assert len(group) == 6
        assert PHI in group and PSI in group

    def test_cube(self):
        assert len(find_symmetries(cube(3))) == 6

    def test_standard_simplex(self):
        p = parse_hrep(fixture.fixture_path("unit-simplex-6.hrep").read_text())
        assert len(find_symmetries(p, budget=10**4)) == 720

    def test_budget(self, poly_p):
        with pytest.raises(BudgetError):
            find_symmetries(poly_p, budget=100)

    def test_group_axioms(self, poly_p):
        group = set(find_symmetries(poly_p))
        for a in group:
            assert a.inverse() in group
            for b in group:
                assert a.compose(b) in group

    def test_each_element_preserves_p(self, poly_p):
        for g in find_symmetries(poly_p):
            assert inequality_set(apply_to_polytope(g, poly_p)) == inequality_set(poly_p)

    def test_volume_invariance(self, poly_p, decomp):
        for g in find_symmetries(poly_p):
            for piece in (decomp.p1, decomp.p11):
                pts = enumerate_vertices(piece).points
                moved = [g.apply(v) for v in pts]
                assert total_volume(incremental_triangulation(moved)) == total_volume(incremental_triangulation(pts))


class TestCongruence:
    def test_halves(self, decomp):
        v11 = enumerate_vertices(decomp.p11).points
        v12 = enumerate_vertices(decomp.p12).points
        assert certify_congruent(v11, v12, PSI)
        assert not certify_congruent(v11, v12, CoordinatePermutation.identity(6))

    def test_thirds(self, decomp):
        v1 = enumerate_vertices(decomp.p1).points
        v2 = enumerate_vertices(decomp.p2).points
        assert certify_congruent(v1, v2, PHI)

    def test_volume_thirds(self, decomp):
        third = fixture.P_VOLUME / 3
        assert vol(decomp.p1) == vol(decomp.p2) == vol(decomp.p3) == third

    def test_volume_halves(self, decomp):
        assert vol(decomp.p11) == vol(decomp.p12) == vol(decomp.p1) / 2

    def test_quotient(self, decomp):
        assert 6 * vol(decomp.p11) == vol(decomp.p) == fixture.P_VOLUME

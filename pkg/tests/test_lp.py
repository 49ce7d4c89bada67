from fractions import Fraction

from polyvol import lp


def test_small_optimum():
    res = lp.maximize([1, 1], [[1, 2], [3, 1]], [4, 6])
    assert res.status == lp.OPTIMAL
    assert res.x == (Fraction(8, 5), Fraction(6, 5))
    assert res.value == Fraction(14, 5)


def test_infeasible():
    assert lp.maximize([1], [[1], [1]], [1, 2]).status == lp.INFEASIBLE


def test_unbounded():
    assert lp.maximize_inequality([1, 0], [[-1, 0]], [0]).status == lp.UNBOUNDED


def test_redundant_equalities():
    res = lp.maximize([0, 1], [[1, 1], [2, 2]], [1, 2])
    assert res.status == lp.OPTIMAL and res.x == (0, 1)


def test_degenerate_does_not_cycle():
    # Beale's cycling example: Dantzig's rule loops forever here, Bland's rule terminates
    c = [Fraction(3, 4), -150, Fraction(1, 50), -6, 0, 0, 0]
    a = [
        [Fraction(1, 4), -60, Fraction(-1, 25), 9, 1, 0, 0],
        [Fraction(1, 2), -90, Fraction(-1, 50), 3, 0, 1, 0],
        [0, 0, 1, 0, 0, 0, 1],
    ]
    res = lp.maximize(c, a, [0, 0, 1])
    assert res.status == lp.OPTIMAL
    assert res.value == Fraction(1, 20)


def test_free_variables():
    res = lp.maximize_inequality([-1, -1], [[-1, 0], [0, -1]], [3, 2])
    assert res.value == 5 and res.x == (-3, -2)

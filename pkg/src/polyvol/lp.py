"""Two-phase tableau simplex method over the rationals.

Solves ``max c.x  s.t.  A x = b, x >= 0``.  Bland's rule picks both the
entering and the leaving variable, so degenerate problems cannot cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: Optional[tuple] = None
    value: Optional[Fraction] = None


def _pivot(tab, basis, r, c):
    prow = tab[r]
    inv = 1 / prow[c]
    prow = tab[r] = [x * inv for x in prow]
    for i, row in enumerate(tab):
        if i != r and row[c]:
            f = row[c]
            tab[i] = [x - f * y for x, y in zip(row, prow)]
    basis[r] = c


def _run(tab, basis, allowed):
    """Iterate to optimality.  The objective row is ``tab[-1]``."""
    m = len(tab) - 1
    while True:
        obj = tab[-1]
        enter = next((j for j in range(allowed) if obj[j] > 0), None)
        if enter is None:
            return OPTIMAL
        leave = None
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return UNBOUNDED
        _pivot(tab, basis, leave, enter)


def maximize(c, a_eq, b_eq) -> LPResult:
    n = len(c)
    rows = []
    for row, rhs in zip(a_eq, b_eq):
        row = [Fraction(x) for x in row]
        rhs = Fraction(rhs)
        if len(row) != n:
            raise ValueError("constraint row length does not match objective")
        if rhs < 0:
            row, rhs = [-x for x in row], -rhs
        rows.append((row, rhs))
    m = len(rows)

    # phase 1: artificials n..n+m-1 start in the basis
    tab = []
    for i, (row, rhs) in enumerate(rows):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tab.append(row + art + [rhs])
    obj = [Fraction(0)] * (n + m + 1)
    for row in tab:
        for j in range(n):
            obj[j] += row[j]
        obj[-1] += row[-1]
    # objective row holds reduced costs and minus the objective value
    tab.append(obj)
    basis = list(range(n, n + m))
    _run(tab, basis, n)
    if tab[-1][-1] != 0:
        return LPResult(INFEASIBLE)

    # drive zero-level artificials out; drop rows that turn out to be redundant
    i = 0
    while i < len(basis):
        if basis[i] >= n:
            col = next((j for j in range(n) if tab[i][j] != 0), None)
            if col is None:
                del tab[i]
                del basis[i]
                continue
            _pivot(tab, basis, i, col)
        i += 1

    # phase 2 on the original columns only
    tab = [row[:n] + [row[-1]] for row in tab[:-1]]
    obj = [Fraction(x) for x in c] + [Fraction(0)]
    for i, b in enumerate(basis):
        cb = obj[b]
        if cb:
            obj = [x - cb * y for x, y in zip(obj, tab[i])]
    tab.append(obj)
    status = _run(tab, basis, n)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * n
    for i, b in enumerate(basis):
        x[b] = tab[i][-1]
    return LPResult(OPTIMAL, tuple(x), -tab[-1][-1])


def maximize_inequality(c, a_ub, b_ub) -> LPResult:
    """``max c.x  s.t.  A x <= b`` with ``x`` free."""
    n = len(c)
    m = len(a_ub)
    a_eq = []
    for i, row in enumerate(a_ub):
        slack = [Fraction(0)] * m
        slack[i] = Fraction(1)
        a_eq.append(list(row) + [-x for x in row] + slack)
    cost = list(c) + [-x for x in c] + [Fraction(0)] * m
    res = maximize(cost, a_eq, b_ub)
    if res.status != OPTIMAL:
        return res
    x = tuple(res.x[j] - res.x[n + j] for j in range(n))
    return LPResult(OPTIMAL, x, res.value)

"""Two-phase simplex over exact rationals.

Free variables are split into positive parts, inequalities get surplus
columns, and both phases pivot under Bland's rule (smallest eligible
index), which guarantees termination without any tolerance.  Problem sizes
here are tiny (section polytopes of fans with at most a handful of rays),
so the tableau recomputes reduced costs on every pivot for simplicity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ContractError

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: object = None   # Fraction when optimal
    point: tuple = None    # optimizer in the original free variables


def _pivot(rows, rhs, basis, r, c):
    piv = rows[r][c]
    rows[r] = [v / piv for v in rows[r]]
    rhs[r] = rhs[r] / piv
    for i in range(len(rows)):
        if i != r and rows[i][c] != 0:
            f = rows[i][c]
            rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
            rhs[i] = rhs[i] - f * rhs[r]
    basis[r] = c


def _run_simplex(rows, rhs, basis, cost):
    """Minimize cost over the current basic feasible tableau (Bland's rule).
    Returns OPTIMAL or UNBOUNDED; mutates the tableau in place."""
    ncols = len(cost)
    while True:
        reduced = list(cost)
        for i, b in enumerate(basis):
            cb = cost[b]
            if cb != 0:
                row = rows[i]
                for j in range(ncols):
                    if row[j] != 0:
                        reduced[j] -= cb * row[j]
        entering = next((j for j in range(ncols) if reduced[j] < 0), None)
        if entering is None:
            return OPTIMAL
        leaving = None
        best = None
        for i in range(len(rows)):
            a = rows[i][entering]
            if a > 0:
                ratio = rhs[i] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best, leaving = ratio, i
        if leaving is None:
            return UNBOUNDED
        _pivot(rows, rhs, basis, leaving, entering)


def solve_lp(objective, constraints, n, maximize=False) -> LPResult:
    """Optimize objective . x over {x in Q^n : a_i . x >= b_i for all i}.

    constraints: iterable of (coefficient sequence, rhs).  Exact throughout;
    the point returned attains the optimum.
    """
    objective = [Fraction(c) for c in objective]
    if maximize:
        objective = [-c for c in objective]
    cons = [([Fraction(c) for c in a], Fraction(b)) for a, b in constraints]
    m = len(cons)
    width = 2 * n + m          # x+ columns, x- columns, surplus columns
    rows, rhs = [], []
    for i, (a, b) in enumerate(cons):
        row = [Fraction(0)] * width
        for j in range(n):
            row[j] = a[j]
            row[n + j] = -a[j]
        row[2 * n + i] = Fraction(-1)
        if b < 0:
            row = [-v for v in row]
            b = -b
        rows.append(row)
        rhs.append(b)

    # phase 1: artificial basis
    total = width + m
    for i in range(m):
        rows[i] = rows[i] + [Fraction(1) if k == i else Fraction(0) for k in range(m)]
    basis = list(range(width, width + m))
    cost1 = [Fraction(0)] * width + [Fraction(1)] * m
    if _run_simplex(rows, rhs, basis, cost1) != OPTIMAL:
        raise ContractError("phase-1 objective cannot be unbounded")
    if sum(rhs[i] for i in range(m) if basis[i] >= width) > 0:
        return LPResult(INFEASIBLE)
    # drive lingering artificials out of the basis
    for i in range(m):
        if basis[i] >= width:
            c = next((j for j in range(width) if rows[i][j] != 0), None)
            if c is not None:
                _pivot(rows, rhs, basis, i, c)
    keep = [i for i in range(m) if basis[i] < width]
    rows = [rows[i][:width] for i in keep]
    rhs = [rhs[i] for i in keep]
    basis = [basis[i] for i in keep]

    cost2 = objective + [-c for c in objective] + [Fraction(0)] * m
    status = _run_simplex(rows, rhs, basis, cost2)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    values = {b: rhs[i] for i, b in enumerate(basis)}
    x = tuple(values.get(j, Fraction(0)) - values.get(n + j, Fraction(0))
              for j in range(n))
    val = sum(c * v for c, v in zip(objective, x))
    return LPResult(OPTIMAL, -val if maximize else val, x)


def feasible_point(constraints, n):
    """A rational point satisfying a_i . x >= b_i for all i, or None."""
    res = solve_lp([0] * n, constraints, n)
    return res.point if res.status == OPTIMAL else None

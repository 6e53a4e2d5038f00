"""Exact simplex against an independent vertex-enumeration oracle."""

import random
from fractions import Fraction

from nonnef.simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, feasible_point, solve_lp
from oracles import lp_min_by_vertices


def test_triangle_minimum():
    # feasible region: x >= 0, y >= 0, x + y >= 1; minimize x + 2y
    cons = [((1, 0), 0), ((0, 1), 0), ((1, 1), 1)]
    res = solve_lp((1, 2), cons, 2)
    assert res.status == OPTIMAL and res.value == 1 and res.point == (1, 0)


def test_infeasible():
    cons = [((1,), 1), ((-1,), 0)]  # x >= 1 and x <= 0
    assert solve_lp((1,), cons, 1).status == INFEASIBLE
    assert feasible_point(cons, 1) is None


def test_unbounded():
    cons = [((1,), 0)]
    assert solve_lp((-1,), cons, 1).status == UNBOUNDED


def test_maximize_mode():
    cons = [((1, 0), 0), ((0, 1), 0), ((-1, -1), -2)]  # simplex with x+y <= 2
    res = solve_lp((1, 1), cons, 2, maximize=True)
    assert res.value == 2


def test_exact_fractions():
    cons = [((3, 0), 1), ((0, 7), 2), ((-1, 0), -5), ((0, -1), -5)]
    res = solve_lp((1, 1), cons, 2)
    assert res.value == Fraction(1, 3) + Fraction(2, 7)


def test_free_variables_negative_optimum():
    cons = [((1, 0), -3), ((0, 1), -4), ((-1, 0), -10), ((0, -1), -10)]
    res = solve_lp((1, 1), cons, 2)
    assert res.value == -7 and res.point == (-3, -4)


def test_random_bounded_lps_match_vertex_oracle():
    rng = random.Random(97)
    for _ in range(120):
        n = rng.choice([2, 3])
        cons = [tuple(([rng.randrange(-3, 4) for _ in range(n)], rng.randrange(-5, 6)))
                for _ in range(rng.randrange(n + 1, n + 5))]
        # boundedness: add box constraints
        for j in range(n):
            lo = [0] * n
            lo[j] = 1
            cons.append((lo, -8))
            hi = [0] * n
            hi[j] = -1
            cons.append((hi, -8))
        obj = [rng.randrange(-3, 4) for _ in range(n)]
        res = solve_lp(obj, cons, n)
        oracle_val, _ = lp_min_by_vertices(
            [Fraction(c) for c in obj],
            [([Fraction(c) for c in a], Fraction(b)) for a, b in cons], n)
        if res.status == INFEASIBLE:
            assert oracle_val is None
        else:
            assert res.status == OPTIMAL
            assert res.value == oracle_val
            point_ok = all(sum(c * v for c, v in zip(a, res.point)) >= b for a, b in cons)
            assert point_ok

"""Graded sequences, asymptotic orders, and asymptotic test ideals.

Run:  python demos/03_asymptotic_orders.py
"""

from fractions import Fraction

from nonnef.asymptotic import (CoordinateSubvariety, GradedSequence,
                               asymptotic_ord, asymptotic_test_ideal,
                               check_compute_test, check_estimate_order,
                               ord_along)
from nonnef.ideal import monomial_ideal
from nonnef.poly import ring

R = ring(2, "x", "y")
ORIGIN = CoordinateSubvariety((0, 1))
VX = CoordinateSubvariety((0,))

# ord along a coordinate subvariety is the least S-weight of a term.
a = monomial_ideal(R, {(2, 0), (1, 1)})
print("a =", a)
print("ord at the origin:", ord_along(a, ORIGIN))
print("ord along V(x):  ", ord_along(a, VX))
print()

# A graded sequence a_m = (x^ceil(m/2)): its asymptotic order along V(x)
# is exactly 1/2, approached from above by the sampled ratios.
seq = GradedSequence.from_rule(R, lambda m: monomial_ideal(R, {(-(-m // 2), 0)}),
                               "ceil-half")
est = asymptotic_ord(seq, VX, 16)
print("ceil-half sequence:  upper bound", est.upper_bound,
      " value at m* =", est.m_star, "is", est.value_at_cap)
print()

# For power sequences the asymptotic test ideal collapses to the plain one.
power = GradedSequence.power(monomial_ideal(R, {(1, 0), (0, 1)}))
for lam in (1, 2, Fraction(5, 2)):
    r = asymptotic_test_ideal(power, lam)
    print(f"asymptotic tau(lambda={lam}) =", repr(r.ideal), f"[{r.evidence}]")
print()

# The strict lower bound linking orders of test ideals to orders of the
# input, and the sandwich that computes asymptotic orders through the
# asymptotic test ideals b_m.
chk = check_estimate_order(a, ORIGIN, 2)
print(f"ord(tau(a^2)) = {chk.lhs} > {chk.rhs} = 2*ord(a) - codim:", chk.holds)
rep = check_compute_test(power, ORIGIN, 8)
for row in rep.rows:
    print(f"  m={row.m}: ord(b_m)/m = {row.ord_b_over_m} in "
          f"({row.lower_bound}, {row.ord_a_over_m}]")

"""F-jumping numbers: where the test ideal drops as the exponent grows.

Run:  python demos/02_f_jumping_numbers.py
"""

from fractions import Fraction

from nonnef import f_jumping_numbers, parse_ideal

# A principal smooth divisor jumps exactly at the integers.
rep = f_jumping_numbers(parse_ideal("p=2; vars=x; gens=[x]"), 4, denom_bound=8)
print("ideal (x), jumps up to 4:", [str(j) for j in rep.jumps])
for p in rep.plateaus:
    print(f"  tau = {p.ideal!r}   on [{p.start}, {p.end})")
print()

# The maximal ideal of the plane first jumps at its F-pure threshold 2.
rep = f_jumping_numbers(parse_ideal("p=2; vars=x,y; gens=[x, y]"),
                        Fraction(7, 2), denom_bound=8)
print("ideal (x,y), jumps up to 7/2:", [str(j) for j in rep.jumps])
for p in rep.plateaus:
    print(f"  tau = {p.ideal!r}   on [{p.start}, {p.end})")
print()

# Jumping numbers are characteristic-dependent in general; for monomial
# ideals the two characteristics below agree.
for prime in (2, 3):
    rep = f_jumping_numbers(parse_ideal(f"p={prime}; vars=x,y; gens=[x^2, y^3]"),
                            2, denom_bound=12)
    print(f"ideal (x^2, y^3) over F_{prime}:",
          [str(j) for j in rep.jumps], "certified" if rep.certified else "capped")

"""Sparse multivariate polynomials over a prime field.

Monomials are exponent tuples; the fixed term order everywhere is graded
reverse lexicographic.  Polynomials are immutable once built.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContractError
from .field import PrimeField

Monomial = tuple  # exponent vector, one natural number per variable


@dataclass(frozen=True)
class Ring:
    """Ambient polynomial ring F_p[variables]."""

    field: PrimeField
    variables: tuple

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise ContractError("duplicate variable names")
        if not self.variables:
            raise ContractError("need at least one variable")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __repr__(self):
        return f"F_{self.field.p}[{','.join(self.variables)}]"


def ring(p: int, *variables: str) -> Ring:
    return Ring(PrimeField(p), tuple(variables))


# -- monomial helpers --------------------------------------------------------

def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True if x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    """Exponent vector of x^b / x^a; caller guarantees divisibility."""
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def grevlex_key(m: Monomial):
    """Sort key: ascending under graded reverse lexicographic order."""
    return (sum(m), tuple(-e for e in reversed(m)))


def min_antichain(monomials) -> frozenset:
    """Minimal elements of a set of exponent vectors under componentwise <=.

    This is the minimal generating set of the monomial ideal the vectors
    generate.
    """
    ordered = sorted(set(monomials), key=grevlex_key)
    kept: list = []
    for m in ordered:
        if not any(mono_divides(k, m) for k in kept):
            kept.append(m)
    return frozenset(kept)


# -- polynomials --------------------------------------------------------------

class Polynomial:
    """Finite map monomial -> nonzero residue, over a fixed Ring."""

    __slots__ = ("ring", "terms", "_key")

    def __init__(self, ring: Ring, terms: dict):
        p = ring.field.p
        clean = {}
        for m, c in terms.items():
            if len(m) != ring.nvars:
                raise ContractError("monomial length does not match variable count")
            c %= p
            if c:
                clean[m] = c
        self.ring = ring
        self.terms = clean
        self._key = None

    # construction helpers
    @classmethod
    def zero(cls, ring: Ring) -> "Polynomial":
        return cls(ring, {})

    @classmethod
    def one(cls, ring: Ring) -> "Polynomial":
        return cls(ring, {(0,) * ring.nvars: 1})

    @classmethod
    def constant(cls, ring: Ring, c: int) -> "Polynomial":
        return cls(ring, {(0,) * ring.nvars: c})

    @classmethod
    def monomial(cls, ring: Ring, exponents, coeff: int = 1) -> "Polynomial":
        return cls(ring, {tuple(exponents): coeff})

    @classmethod
    def variable(cls, ring: Ring, index: int) -> "Polynomial":
        exps = [0] * ring.nvars
        exps[index] = 1
        return cls(ring, {tuple(exps): 1})

    # predicates
    def is_zero(self) -> bool:
        return not self.terms

    def is_term(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {(0,) * self.ring.nvars}

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ContractError("zero polynomial has no leading monomial")
        return max(self.terms, key=grevlex_key)

    def leading_coeff(self) -> int:
        return self.terms[self.leading_monomial()]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        inv = self.ring.field.inv(self.leading_coeff())
        return Polynomial(self.ring, {m: c * inv for m, c in self.terms.items()})

    # arithmetic
    def _check_same_ring(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise ContractError(f"ambient ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_same_ring(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(self.ring, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check_same_ring(other)
        p = self.ring.field.p
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = (out.get(m, 0) + c1 * c2) % p
        return Polynomial(self.ring, out)

    def scale(self, c: int) -> "Polynomial":
        return Polynomial(self.ring, {m: cf * c for m, cf in self.terms.items()})

    def scale_monomial(self, mono: Monomial) -> "Polynomial":
        return Polynomial(self.ring, {mono_mul(m, mono): c for m, c in self.terms.items()})

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ContractError("negative polynomial power")
        result = Polynomial.one(self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n = base_needed
        return result

    # identity
    def key(self):
        """Canonical hashable form: terms sorted descending in grevlex."""
        if self._key is None:
            items = tuple(sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True))
            self._key = (self.ring.field.p, self.ring.variables, items)
        return self._key

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return format_poly(self)


def format_poly(f: Polynomial) -> str:
    """Canonical expanded form: grevlex-descending terms, '^' powers,
    explicit '*' between factors."""
    if f.is_zero():
        return "0"
    parts = []
    for m, c in sorted(f.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True):
        factors = []
        if c != 1 or not any(m):
            factors.append(str(c))
        for name, e in zip(f.ring.variables, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        parts.append("*".join(factors))
    return " + ".join(parts)

"""Frobenius bracket powers and roots, test ideals, F-jumping numbers.

Everything here is exact: exponents of the form ceil(lambda * p^e) are
computed in integer arithmetic, never floats.

The chain (a^ceil(lambda p^e))^[1/p^e] ascends with e and its stable member
is the test ideal.  Stabilization has no effective a-priori bound, so
results carry an evidence grade: 'closed-form' (principal monomial
inputs), 'window-stable' (the chain demonstrably stabilized: for monomial
ideals it reached the exact facet-description value, for general ideals a
run of equal members of configurable length was observed) or 'cap-reached'
(the iterate budget ran out; the reported ideal is then a lower bound, the
chain being ascending).

For monomial ideals the chain member is computed without expanding the
huge power a^N: writing each multiset count c_j in base p as c_j = p*s_j +
r_j regroups every generator exponent sum as

    floor((sum_j c_j v_j + m)/p) = sum_j s_j v_j + floor((sum_j r_j v_j + m)/p)

which expresses (a^N * x^m)^[1/p] as a finite sum of ideals
a^{(N-R)/p} * x^{m'} over digit totals R = sum r_j congruent to N mod p.
Taking p-th roots one at a time turns this into a recursion whose N shrinks
geometrically; the antichain pruning along the way is sound because roots,
products and floors are all monotone.  The recursion is checked against
the naive multiset expansion in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as iter_product

from .caps import DEFAULT_CAPS, Caps
from .errors import ContractError, DomainError, ResourceLimitError
from .field import PrimeField
from .ideal import (Ideal, ideal_contains, ideal_power, ideal_product,
                    monomial_ideal, monomial_power_gens, unit_ideal)
from .newton import monomial_tau_newton
from .poly import Polynomial, min_antichain, mono_divides, mono_mul

EVIDENCE_CLOSED = "closed-form"
EVIDENCE_WINDOW = "window-stable"
EVIDENCE_CAP = "cap-reached"

_EVIDENCE_RANK = {EVIDENCE_CLOSED: 0, EVIDENCE_WINDOW: 1, EVIDENCE_CAP: 2}


def worst_evidence(*grades: str) -> str:
    return max(grades, key=_EVIDENCE_RANK.__getitem__)


@dataclass(frozen=True)
class FrobeniusContext:
    """The e-fold Frobenius on F_p: q = p^e, e = 0 is the identity."""

    field: PrimeField
    e: int

    def __post_init__(self):
        if self.e < 0:
            raise DomainError("Frobenius iterate e must be >= 0")

    @property
    def q(self) -> int:
        return self.field.p ** self.e


@dataclass(frozen=True)
class TestIdealResult:
    ideal: Ideal
    stabilization_e: int      # first chain index at which the reported ideal appeared
    evidence: str             # closed-form | window-stable | cap-reached


def check_lambda(lam) -> Fraction:
    lam = Fraction(lam)
    if lam < 0:
        raise DomainError("exponent must be a non-negative rational")
    return lam


def ceil_times(lam: Fraction, q: int) -> int:
    """ceil(lam * q), exactly."""
    return -((-lam.numerator * q) // lam.denominator)


# -- bracket powers and roots --------------------------------------------------

def frobenius_power(a: Ideal, ctx: FrobeniusContext) -> Ideal:
    """Bracket power a^[q]: generated by g^q over the generators g."""
    if a.ring.field != ctx.field:
        raise ContractError("context characteristic differs from the ambient ring")
    q = ctx.q
    if a.is_zero() or q == 1:
        return a
    if a.is_monomial:
        return monomial_ideal(a.ring, [tuple(q * c for c in v) for v in a.monomials])
    return Ideal(a.ring, [g ** q for g in a.generators])


def _p_root_step(gens, p: int):
    """One p-th root: decompose each generator f = sum_b g_b^p x^b over the
    monomials x^b with exponents < p and collect the coefficients g_b.

    Valid over F_p because the Frobenius fixes the prime field, so the term
    c x^w contributes c x^(w div p) to the bucket b = w mod p.
    """
    out = {}
    for f in gens:
        buckets: dict = {}
        for m, c in f.terms.items():
            res = tuple(e % p for e in m)
            flo = tuple(e // p for e in m)
            buckets.setdefault(res, {})[flo] = c
        for terms in buckets.values():
            g = Polynomial(f.ring, terms)
            if not g.is_zero():
                out[g.key()] = g
    return list(out.values())


_ROOT_GEN_CAP = 100000


def frobenius_root(a: Ideal, ctx: FrobeniusContext, caps: Caps = DEFAULT_CAPS) -> Ideal:
    """The ideal a^[1/p^e]: coefficients of the base-q digit decompositions
    of the generators, computed by iterating the p-th root e times.

    Monomial fast path: x^v maps to x^(v div q) componentwise.
    """
    if a.ring.field != ctx.field:
        raise ContractError("context characteristic differs from the ambient ring")
    if a.is_zero():
        raise DomainError("Frobenius root requires a nonzero ideal")
    if ctx.e == 0:
        return a
    if a.is_monomial:
        q = ctx.q
        return monomial_ideal(a.ring, min_antichain(
            tuple(c // q for c in v) for v in a.monomials))
    gens = list(a.generators)
    p = ctx.field.p
    for _ in range(ctx.e):
        gens = _p_root_step(gens, p)
        if any(g.is_constant() for g in gens):
            return unit_ideal(a.ring)
        if len(gens) > _ROOT_GEN_CAP:
            raise ResourceLimitError("Frobenius root generator count exploded")
    return Ideal(a.ring, gens)


# -- fused monomial root-of-power ----------------------------------------------

@lru_cache(maxsize=None)
def _digit_table(gens: tuple, p: int):
    """For the monomial generators v_1..v_g: minimal exponent sums
    sum_j r_j v_j with digits 0 <= r_j <= p-1, grouped by R = sum_j r_j."""
    n = len(gens[0])
    table = {0: frozenset([(0,) * n])}
    for v in gens:
        grown: dict = {}
        for rcount in range(p):
            rv = tuple(rcount * c for c in v)
            for total, zs in table.items():
                bucket = grown.setdefault(total + rcount, set())
                bucket.update(mono_mul(z, rv) for z in zs)
        table = {total: min_antichain(zs) for total, zs in grown.items()}
    return {total: tuple(sorted(zs)) for total, zs in table.items()}


@lru_cache(maxsize=None)
def _small_power_gens(gens: tuple, n: int) -> frozenset:
    return monomial_power_gens(frozenset(gens), n) if n else frozenset([(0,) * len(gens[0])])


def monomial_root_of_power(ring, pairs, e: int, p: int) -> frozenset:
    """Minimal generators of (prod_i a_i^{N_i})^[1/p^e] for monomial ideals
    a_i given by minimal generator tuples, without expanding the powers.

    pairs: sequence of (sorted tuple of exponent vectors, N_i >= 0).
    """
    pairs = tuple((tuple(sorted(g)), n) for g, n in pairs)
    nvars = ring.nvars
    memo: dict = {}

    def rec(ns: tuple, m: tuple, e_left: int) -> frozenset:
        key = (ns, m, e_left)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if e_left == 0:
            gens = {m}
            for (gvecs, _), n in zip(pairs, ns):
                pw = _small_power_gens(gvecs, n)
                gens = min_antichain(mono_mul(g, w) for g in gens for w in pw)
            out = frozenset(gens)
        else:
            options = []
            for (gvecs, _), n in zip(pairs, ns):
                rmax = min(n, len(gvecs) * (p - 1))
                options.append(range(n % p, rmax + 1, p))
            collected: set = set()
            for combo in iter_product(*options):
                zs = {m}
                for (gvecs, _), r in zip(pairs, combo):
                    if r:
                        zset = _digit_table(gvecs, p)[r]
                        zs = min_antichain(mono_mul(z, w) for z in zs for w in zset)
                sub_ns = tuple((n - r) // p for n, r in zip(ns, combo))
                for z in zs:
                    m2 = tuple(c // p for c in z)
                    collected |= rec(sub_ns, m2, e_left - 1)
            out = min_antichain(collected)
        memo[key] = out
        return out

    start_ns = tuple(n for _, n in pairs)
    return rec(start_ns, (0,) * nvars, e)


# -- test ideals -----------------------------------------------------------------

def _principal_monomial_closed_form(a: Ideal, lam: Fraction) -> TestIdealResult:
    """tau((x^v)^lam) = x^floor(lam*v): the chain value floor(ceil(lam q) v / q)
    reaches this for every q > max(v) * denominator(lam) and never moves again."""
    (v,) = a.monomials
    limit = tuple((lam.numerator * c) // lam.denominator for c in v)
    p = a.ring.field.p
    e, q = 1, p
    while tuple((ceil_times(lam, q) * c) // q for c in v) != limit:
        e += 1
        q *= p
    return TestIdealResult(monomial_ideal(a.ring, [limit]), e, EVIDENCE_CLOSED)


def _chain_scan(members, window: int):
    """Walk an iterator of (e, ideal-key, ideal); return
    (ideal, first_e, stabilized?) following the equality-window rule."""
    first_e = None
    prev_key = None
    current = None
    run = 0
    for e, key, ideal in members:
        if prev_key is not None and key == prev_key:
            run += 1
            if run >= window:
                return current, first_e, True
        else:
            run = 0
            first_e = e
            current = ideal
            prev_key = key
    return current, first_e, False


def _monomial_chain(ring, pairs_with_lambda, caps: Caps) -> TestIdealResult:
    """Run the ascending chain; stop exactly when it reaches the Newton-facet
    value, which certifies stabilization (a plain equality window can sit on
    a false plateau for several steps, e.g. (x,y)^(9/5) in F_2)."""
    p = ring.field.p
    target = monomial_tau_newton(ring.nvars, pairs_with_lambda)
    prev = None
    first_e = None
    j = None
    q = 1
    for e in range(1, caps.e_max_monomial + 1):
        q *= p
        pairs = tuple((gens, ceil_times(lam, q)) for gens, lam in pairs_with_lambda)
        j = monomial_root_of_power(ring, pairs, e, p)
        if prev is not None and not all(
                any(mono_divides(w, v) for w in j) for v in prev):
            raise ContractError(f"test-ideal chain failed to ascend at e={e}")
        if not all(any(mono_divides(w, v) for w in target) for v in j):
            raise ContractError("chain member escaped the certified test ideal")
        if j != prev:
            first_e = e
        prev = j
        if j == target:
            return TestIdealResult(monomial_ideal(ring, j), first_e, EVIDENCE_WINDOW)
    return TestIdealResult(monomial_ideal(ring, j), first_e, EVIDENCE_CAP)


def _general_chain(ring, ideals_with_lambda, caps: Caps) -> TestIdealResult:
    p = ring.field.p

    def members():
        prev = None
        q = 1
        for e in range(1, caps.e_max_general + 1):
            q *= p
            try:
                power = unit_ideal(ring)
                for a, lam in ideals_with_lambda:
                    power = ideal_product(power, ideal_power(a, ceil_times(lam, q), caps))
            except ResourceLimitError:
                if prev is None:
                    raise
                return  # chain truncated by the degree cap: cap-reached below
            j = frobenius_root(power, FrobeniusContext(ring.field, e), caps)
            if prev is not None and not ideal_contains(j, prev, caps):
                raise ContractError(f"test-ideal chain failed to ascend at e={e}")
            prev = j
            yield e, _ideal_key_for_chain(j, caps), j

    ideal, first_e, stable = _chain_scan(members(), caps.window)
    return TestIdealResult(ideal, first_e, EVIDENCE_WINDOW if stable else EVIDENCE_CAP)


def _ideal_key_for_chain(a: Ideal, caps: Caps):
    if a.is_monomial:
        return ("monomial", a.monomials)
    return ("gb", tuple(g.key() for g in a.groebner(caps.gb_pair_cap)))


def test_ideal(a: Ideal, lam, caps: Caps = DEFAULT_CAPS) -> TestIdealResult:
    """tau(a^lam): stable member of the ascending Frobenius-root chain."""
    lam = check_lambda(lam)
    if a.is_zero():
        raise DomainError("test ideal requires a nonzero ideal")
    if a.is_unit() or lam == 0:
        return TestIdealResult(unit_ideal(a.ring), 1,
                               EVIDENCE_CLOSED if lam == 0 else EVIDENCE_WINDOW)
    if a.is_monomial and len(a.monomials) == 1:
        return _principal_monomial_closed_form(a, lam)
    if a.is_monomial:
        return _monomial_chain(a.ring, ((tuple(sorted(a.monomials)), lam),), caps)
    return _general_chain(a.ring, ((a, lam),), caps)


def mixed_test_ideal(a: Ideal, lam, b: Ideal, mu, caps: Caps = DEFAULT_CAPS) -> TestIdealResult:
    """tau(a^lam b^mu): same chain contract applied to the product power."""
    lam, mu = check_lambda(lam), check_lambda(mu)
    if a.is_zero() or b.is_zero():
        raise DomainError("mixed test ideal requires nonzero ideals")
    if a.ring != b.ring:
        raise ContractError("mixed test ideal needs a common ambient ring")
    if a.is_monomial and b.is_monomial:
        return _monomial_chain(a.ring, ((tuple(sorted(a.monomials)), lam),
                                        (tuple(sorted(b.monomials)), mu)), caps)
    return _general_chain(a.ring, ((a, lam), (b, mu)), caps)


# -- F-jumping numbers -----------------------------------------------------------

@dataclass(frozen=True)
class Plateau:
    start: Fraction   # tau is constant on [start, end); start 0 means (0, end)
    end: Fraction     # the final plateau also includes its right endpoint
    ideal: Ideal


@dataclass(frozen=True)
class JumpReport:
    interval_end: Fraction
    jumps: tuple
    plateaus: tuple
    certified: bool   # False if any tau evaluation hit a cap


def f_jumping_numbers(a: Ideal, lam_max, denom_bound: int,
                      caps: Caps = DEFAULT_CAPS) -> JumpReport:
    """All jumping numbers in (0, lam_max] with denominator <= denom_bound.

    tau is non-increasing in the exponent and constant just to the right of
    every point, so on the candidate grid a bisection is exact: equal ideals
    at two grid points freeze the whole stretch between them.  The report is
    exact relative to the denominator bound.
    """
    lam_max = check_lambda(lam_max)
    if a.is_zero():
        raise DomainError("jumping numbers require a nonzero ideal")
    if denom_bound < 1:
        raise DomainError("denominator bound must be >= 1")
    grid = sorted({Fraction(n, d)
                   for d in range(1, denom_bound + 1)
                   for n in range(1, (lam_max * d).__floor__() + 1)})
    unit = unit_ideal(a.ring)
    results: dict = {-1: TestIdealResult(unit, 0, EVIDENCE_CLOSED)}  # tau(0+) = (1)

    def lookup(i: int) -> TestIdealResult:
        if i not in results:
            results[i] = test_ideal(a, grid[i], caps)
        return results[i]

    def same(i: int, j: int) -> bool:
        return lookup(i).ideal == lookup(j).ideal

    jumps: list = []

    def bisect(lo: int, hi: int):
        # precondition: tau(lo) != tau(hi); find every change point in between
        if hi - lo == 1:
            jumps.append(grid[hi])
            return
        mid = (lo + hi) // 2
        if not same(lo, mid):
            bisect(lo, mid)
        if not same(mid, hi):
            bisect(mid, hi)

    if grid and not same(-1, len(grid) - 1):
        bisect(-1, len(grid) - 1)
    jumps.sort()

    plateaus = []
    boundaries = [Fraction(0)] + jumps
    for k, start in enumerate(boundaries):
        end = boundaries[k + 1] if k + 1 < len(boundaries) else lam_max
        idx = grid.index(start) if start in grid and start > 0 else -1
        plateaus.append(Plateau(start, end, lookup(idx).ideal))
    for prev, nxt in zip(plateaus, plateaus[1:]):
        if not (ideal_contains(prev.ideal, nxt.ideal) and prev.ideal != nxt.ideal):
            raise ContractError("plateau ideals must strictly decrease")
    certified = all(r.evidence != EVIDENCE_CAP for r in results.values())
    return JumpReport(lam_max, tuple(jumps), tuple(plateaus), certified)


# -- the ceiling-splitting identity ----------------------------------------------

@dataclass(frozen=True)
class CeilSplit:
    s: int
    t: int
    lhs: int
    rhs: int


def ceil_split(lam, m: int, p: int, e: int) -> CeilSplit:
    """Write p^e = m*b*s + t with 0 <= t < m*b for lam = a/b; then
    ceil(lam p^e / m) = a*s + ceil(a*t/(b*m)).  Both sides are returned and
    asserted equal."""
    lam = check_lambda(lam)
    if m < 1:
        raise DomainError("m must be a positive integer")
    if e < 0:
        raise DomainError("e must be >= 0")
    PrimeField(p)  # validates primality
    a, b = lam.numerator, lam.denominator
    q = p ** e
    s, t = divmod(q, m * b)
    lhs = -((-a * q) // (b * m))
    rhs = a * s + -((-a * t) // (b * m))
    if lhs != rhs:
        raise ContractError(f"ceil identity violated at lam={lam}, m={m}, p={p}, e={e}")
    return CeilSplit(s, t, lhs, rhs)

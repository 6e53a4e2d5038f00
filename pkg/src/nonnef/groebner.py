"""Buchberger's algorithm over F_p, graded reverse lexicographic order.

Plain Buchberger with the coprime-leading-term (product) criterion only;
deterministic pair selection so the reduced basis is reproducible.  An
S-pair budget guards against runaway inputs.
"""

from __future__ import annotations

from .errors import ResourceLimitError
from .poly import Polynomial, grevlex_key, mono_div, mono_divides, mono_lcm, mono_mul


def normal_form(f: Polynomial, basis) -> Polynomial:
    """Remainder of f under multivariate division by `basis`."""
    p = f.ring.field.p
    leads = [(g.leading_monomial(), g.ring.field.inv(g.leading_coeff()), g)
             for g in basis if not g.is_zero()]
    remainder: dict = {}
    work = dict(f.terms)
    while work:
        m = max(work, key=grevlex_key)
        c = work.pop(m)
        for lm, lcinv, g in leads:
            if mono_divides(lm, m):
                factor = (c * lcinv) % p
                shift = mono_div(m, lm)
                for gm, gc in g.terms.items():
                    if gm == lm:
                        continue  # cancels the popped term m exactly
                    t = mono_mul(gm, shift)
                    v = (work.get(t, 0) - factor * gc) % p
                    if v:
                        work[t] = v
                    else:
                        work.pop(t, None)
                break
        else:
            remainder[m] = c
    return Polynomial(f.ring, remainder)


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    lf, lg = f.leading_monomial(), g.leading_monomial()
    lcm = mono_lcm(lf, lg)
    a = f.scale_monomial(mono_div(lcm, lf)).scale(f.ring.field.inv(f.leading_coeff()))
    b = g.scale_monomial(mono_div(lcm, lg)).scale(g.ring.field.inv(g.leading_coeff()))
    return a - b


def buchberger(generators, pair_cap: int = 20000):
    """Reduced Groebner basis of the ideal spanned by `generators`.

    Deterministic given the generator list: pairs are processed in order of
    (lcm degree, lcm, indices); the output is monic, autoreduced and sorted
    by leading monomial.
    """
    basis = [g.monic() for g in generators if not g.is_zero()]
    basis.sort(key=lambda h: grevlex_key(h.leading_monomial()))
    if not basis:
        return []

    def pair_key(ij):
        i, j = ij
        lcm = mono_lcm(basis[i].leading_monomial(), basis[j].leading_monomial())
        return (sum(lcm), grevlex_key(lcm), i, j)

    pending = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    processed = 0
    while pending:
        i, j = min(pending, key=pair_key)
        pending.discard((i, j))
        processed += 1
        if processed > pair_cap:
            raise ResourceLimitError(f"Groebner pair budget exceeded ({pair_cap})")
        lf = basis[i].leading_monomial()
        lg = basis[j].leading_monomial()
        if mono_lcm(lf, lg) == mono_mul(lf, lg):
            continue  # product criterion: coprime leading terms
        rem = normal_form(s_polynomial(basis[i], basis[j]), basis)
        if not rem.is_zero():
            basis.append(rem.monic())
            k = len(basis) - 1
            pending.update((t, k) for t in range(k))
    return _reduce_basis(basis)


def _reduce_basis(basis):
    # minimalize: drop g whenever another member's lead divides its lead
    ordered = sorted(basis, key=lambda h: grevlex_key(h.leading_monomial()))
    minimal = []
    for g in ordered:
        lm = g.leading_monomial()
        if not any(mono_divides(k.leading_monomial(), lm) for k in minimal):
            minimal.append(g)
    # tail-reduce each member against the rest
    reduced = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        h = normal_form(g, others).monic() if others else g
        if not h.is_zero():
            reduced.append(h)
    reduced.sort(key=lambda h: grevlex_key(h.leading_monomial()))
    return reduced

"""Computation budgets.

Every "for e >> 0" / "for m divisible enough" quantifier in the theory
becomes a user-visible budget here.  Results that hit a cap are returned
with evidence='cap-reached' instead of being silently wrong.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Caps:
    e_max_monomial: int = 10     # Frobenius-iterate cap, monomial chain
    e_max_general: int = 5       # Frobenius-iterate cap, general chain
    window: int = 2              # consecutive equalities certifying stabilization
    m_cap: int = 64              # divisibility-chain cap for asymptotic chains
    epsilon_depth: int = 12      # ample-perturbation schedule 1/2^k, k <= depth
    gb_pair_cap: int = 20000     # Buchberger S-pair budget
    power_degree_cap: int = 512  # total-degree cap for powers of general ideals

    def with_overrides(self, **kw) -> "Caps":
        return replace(self, **kw)


#: Environment variables recognized by :func:`caps_from_env`.
ENV_VARS = {
    "NONNEF_E_MAX_MONOMIAL": "e_max_monomial",
    "NONNEF_E_MAX_GENERAL": "e_max_general",
    "NONNEF_WINDOW": "window",
    "NONNEF_M_CAP": "m_cap",
    "NONNEF_EPSILON_DEPTH": "epsilon_depth",
    "NONNEF_GB_PAIR_CAP": "gb_pair_cap",
    "NONNEF_POWER_DEGREE_CAP": "power_degree_cap",
}

DEFAULT_CAPS = Caps()


def caps_from_env(base: Caps = DEFAULT_CAPS) -> Caps:
    """Defaults overridden by NONNEF_* environment variables."""
    overrides = {}
    for var, field in ENV_VARS.items():
        raw = os.environ.get(var)
        if raw is not None:
            overrides[field] = int(raw)
    return base.with_overrides(**overrides) if overrides else base

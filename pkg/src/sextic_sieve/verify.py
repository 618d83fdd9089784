"""Independent ground truth and the counterexample harness.

Nothing here uses the residue machinery: primality is a deterministic
Miller-Rabin with a fixed witness set and factoring is plain trial division.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import isqrt

from .wheel import U64_MAX, WidthError

log = logging.getLogger(__name__)

# Jaeschke / Sorenson-Webster: these twelve bases decide every n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_TRIAL_LIMIT = 10**6
FACTOR_BUDGET = 10**12


def _trial_is_prime(v: int) -> bool:
    if v < 2:
        return False
    if v % 2 == 0:
        return v == 2
    for d in range(3, isqrt(v) + 1, 2):
        if v % d == 0:
            return False
    return True


def is_prime_ref(v: int) -> bool:
    if v < 1 or v > U64_MAX:
        raise ValueError(f"is_prime_ref covers 1 <= v < 2**64, got {v}")
    if v < _TRIAL_LIMIT:
        return _trial_is_prime(v)
    if v % 2 == 0:
        return False
    d, s = v - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, v)
        if x == 1 or x == v - 1:
            continue
        for _ in range(s - 1):
            x = x * x % v
            if x == v - 1:
                break
        else:
            return False
    return True


def factor_small(v: int) -> list[int]:
    """Prime factors of ``v`` in ascending order, with multiplicity.

    >>> factor_small(539)
    [7, 7, 11]
    """
    if v < 2 or v > FACTOR_BUDGET:
        raise ValueError(f"factor_small handles 2 <= v <= {FACTOR_BUDGET}, got {v}")
    out = []
    for d in (2, 3):
        while v % d == 0:
            out.append(d)
            v //= d
    d = 5
    while d * d <= v:
        for f in (d, d + 2):
            while v % f == 0:
                out.append(f)
                v //= f
        d += 6
    if v > 1:
        out.append(v)
    return out


@dataclass(frozen=True)
class Disagreement:
    m: int
    N: int
    P: int
    theorem_outcome: str
    oracle_outcome: str
    engine: str
    witness: object = None
    bound: int | None = None
    checks: int | None = None


class SearchReport(list):
    """List of :class:`Disagreement` records plus the grid points skipped."""

    def __init__(self, items=(), skipped=None, checked=0):
        super().__init__(items)
        self.skipped: list[tuple[int, int, str]] = list(skipped or [])
        self.checked = checked


def search_counterexamples(m_list, N_lo: int, N_hi: int,
                           engine: str = "sound") -> SearchReport:
    """Compare an engine's verdict with :func:`is_prime_ref` over a grid.

    ``engine`` is ``"sound"`` or ``"literal"``.  Points the engine refuses
    (P too wide, or N outside the literal engine's domain) are collected in
    ``report.skipped`` rather than dropped.
    """
    from . import exclusion

    if engine not in ("sound", "literal"):
        raise ValueError(f"unknown engine {engine!r}")
    found, skipped, checked = [], [], 0
    for m in sorted(set(m_list)):
        for N in range(N_lo, N_hi + 1):
            try:
                if engine == "sound":
                    v = exclusion.theorem_verdict(N, m)
                else:
                    v = exclusion.paper_literal_verdict(N, m)
            except WidthError as exc:
                skipped.append((m, N, str(exc)))
                continue
            except exclusion.DomainError as exc:
                skipped.append((m, N, str(exc)))
                continue
            checked += 1
            oracle = "prime" if is_prime_ref(v.P) else "composite"
            if oracle != v.outcome:
                found.append(Disagreement(m, N, v.P, v.outcome, oracle, engine,
                                          v.witness, v.i_bound_used,
                                          v.checks_performed))
    for m, N, why in skipped:
        log.debug("skipped m=%d N=%d: %s", m, N, why)
    return SearchReport(found, skipped, checked)

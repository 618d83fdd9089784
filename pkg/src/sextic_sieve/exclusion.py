"""Primality of ``P = 6**(m+1) * N - 1`` through residues modulo ``6i + 1``.

Because ``6i = -1 (mod 6i+1)``, the power ``6**(m+1)`` is congruent to
``(-1)**(m+1) * i**-(m+1)``.  So ``6i + 1`` divides ``P`` exactly when

    N = i**(m+1)  (mod 6i+1)     for odd m
    N = -i**(m+1) (mod 6i+1)     for even m (extension)

i.e. ``N = residue(i, m) + (6i+1)*a`` for some ``a >= 0``.  Any composite
``P`` (which is 5 mod 6) has such a divisor no larger than ``P / 5``, which
bounds the search over ``i``.

Two verdict engines live here.  :func:`theorem_verdict` is sound over the
full bound.  :func:`paper_literal_verdict` replays the hand procedure: an
``a = 0`` lookup, then ``a >= 1`` only while ``6i + 1`` fits under ``N``.
:func:`bound_audit` lists where a purely small-i scan would go wrong.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import isqrt
from typing import Iterator

from .closed_form import family_membership, residue_families
from .wheel import check_width

SMALL_N_LIMIT = 13


class DomainError(ValueError):
    """Input outside the domain an engine is defined on."""


@dataclass(frozen=True)
class TheoremParams:
    m: int
    N: int

    def __post_init__(self):
        if self.m < 1:
            raise DomainError(f"m must be >= 1, got {self.m}")
        if self.N < 1:
            raise DomainError(f"N must be >= 1, got {self.N}")
        check_width(self.P, "P = 6^(m+1)*N - 1")

    @property
    def P(self) -> int:
        return 6 ** (self.m + 1) * self.N - 1

    @property
    def extension(self) -> bool:
        """Even m is the sign-flipped extension, not the theorem proper."""
        return self.m % 2 == 0


@dataclass(frozen=True)
class ExclusionWitness:
    i: int
    a: int
    residue: int
    divisor: int
    cofactor: int

    def as_dict(self) -> dict:
        return {"i": self.i, "a": self.a, "residue": self.residue,
                "divisor": self.divisor, "cofactor": self.cofactor}


@dataclass(frozen=True)
class Verdict:
    params: TheoremParams
    P: int
    outcome: str  # "prime" | "composite"
    witness: ExclusionWitness | None
    i_bound_used: int
    checks_performed: int
    engine: str = "sound"

    @property
    def is_prime(self) -> bool:
        return self.outcome == "prime"

    @property
    def extension(self) -> bool:
        return self.params.extension


def residue(i: int, m: int) -> int:
    if i < 1 or m < 1:
        raise ValueError(f"residue needs i >= 1 and m >= 1, got i={i}, m={m}")
    d = 6 * i + 1
    r = pow(i, m + 1, d)
    return r if m % 2 else (-r) % d


def _make_witness(N: int, m: int, i: int, P: int) -> ExclusionWitness:
    r = residue(i, m)
    d = 6 * i + 1
    a, rem = divmod(N - r, d)
    cofactor, prem = divmod(P, d)
    if rem or a < 0 or prem:  # pragma: no cover - guarded by the congruence
        raise AssertionError(f"i={i} is not a witness for N={N}, m={m}")
    return ExclusionWitness(i, a, r, d, cofactor)


def find_witness(N: int, m: int, i_max: int,
                 method: str = "pow") -> ExclusionWitness | None:
    """Smallest ``i <= i_max`` with ``N = residue(i, m) (mod 6i+1)``.

    ``method="families"`` (m = 1 only) reads residues off the six linear
    families instead of exponentiating.
    """
    if N < 1 or i_max < 1:
        raise ValueError(f"find_witness needs N >= 1 and i_max >= 1, got N={N}, i_max={i_max}")
    P = TheoremParams(m, N).P
    if method == "pow":
        i = _scan(N, m, 1, i_max)
    elif method == "families":
        if m != 1:
            raise ValueError("the family path only covers m = 1")
        i = _scan_families(N, i_max)
    else:
        raise ValueError(f"unknown method {method!r}")
    return None if i is None else _make_witness(N, m, i, P)


def _scan(N: int, m: int, lo: int, hi: int) -> int | None:
    e = m + 1
    sign_flip = m % 2 == 0
    for i in range(lo, hi + 1):
        d = 6 * i + 1
        r = pow(i, e, d)
        if sign_flip:
            r = (-r) % d
        if N % d == r:
            return i
    return None


def _scan_families(N: int, i_max: int) -> int | None:
    fams = residue_families(6, 1)
    for p in range(0, (i_max - 1) // 6 + 1):
        for fam in fams:
            i = fam.i_at(p)
            if i > i_max:
                return None
            if N % (6 * i + 1) == fam.member(p):
                return i
    return None


def sound_i_bound(N: int, m: int) -> int:
    """Largest ``i`` whose ``6i + 1`` can divide ``P`` with a cofactor >= 5."""
    P = TheoremParams(m, N).P
    return max(1, (P - 5) // 30)


def paper_i_bound(N: int) -> int:
    """The "about N/6 - 2" operation count, for auditing only."""
    if N <= SMALL_N_LIMIT:
        raise DomainError(f"the N/6 - 2 count applies to N > 13, got {N}")
    return max(1, N // 6 - 2)


def theorem_verdict(N: int, m: int) -> Verdict:
    """Sound verdict: composite iff some ``i <= sound_i_bound`` is a witness.

    The scan runs the congruence for every ``6i + 1 <= sqrt(P)``.  Past that
    point a divisor ``6i + 1`` pairs with a cofactor ``6b - 1 < sqrt(P)``, so
    the remaining range is covered by stepping that cofactor down from
    ``sqrt(P)``; the first hit is the largest cofactor and hence the
    smallest ``i``.  The witness is identical to a full linear scan.
    """
    params = TheoremParams(m, N)
    P = params.P
    bound = sound_i_bound(N, m)
    root = isqrt(P)
    i_low = min(bound, (root - 1) // 6)
    checks = 0
    i = None
    if i_low >= 1:
        i = _scan(N, m, 1, i_low)
        checks = i_low if i is None else i
    if i is None:
        b_hi = (root + 1) // 6
        for b in range(b_hi, 0, -1):
            checks += 1
            if P % (6 * b - 1) == 0:
                i = (P // (6 * b - 1) - 1) // 6
                break
    if i is None:
        return Verdict(params, P, "prime", None, bound, checks)
    return Verdict(params, P, "composite", _make_witness(N, m, i, P), bound, checks)


def literal_i_range(N: int) -> int:
    """Last ``i`` the hand procedure visits: stops once ``6i + 1`` passes N."""
    return max(0, (N - 2) // 6)


def paper_literal_verdict(N: int, m: int) -> Verdict:
    """Replay the published decision procedure.

    The ``a = 0`` condition ``N == residue(i, m)`` is a lookup on the six
    residue families for m = 1 (every ``i`` at once) and a scan up to the
    sound bound otherwise.  For N > 13 the ``a >= 1`` condition is then
    tried for ``i = 1..literal_i_range(N)``, i.e. while ``6i + 1`` still
    fits under N.  When both conditions hit, the smaller ``i`` is reported.
    ``i_bound_used`` is the small-i reach.
    """
    if N <= 1 or N == 8:
        raise DomainError(f"N = {N} lies outside 1 < N, N != 8")
    if m % 2 == 0:
        raise DomainError(f"the published procedure is stated for odd m, got {m}")
    params = TheoremParams(m, N)
    P = params.P
    reach = literal_i_range(N) if N > SMALL_N_LIMIT else 0

    def verdict(i, checks):
        if i is None:
            return Verdict(params, P, "prime", None, reach, checks, "literal")
        return Verdict(params, P, "composite", _make_witness(N, m, i, P),
                       reach, checks, "literal")

    if m == 1:
        checks = 6
        hit = family_membership(N, 6, 1)
        i0 = None if hit is None else 6 * hit[1] + hit[0]
    else:
        i0 = None
        checks = 0
        for i in range(1, sound_i_bound(N, m) + 1):
            checks += 1
            if residue(i, m) == N:
                i0 = i
                break
    if N <= SMALL_N_LIMIT:
        return verdict(i0, checks)
    for i in range(1, reach + 1):
        if i0 is not None and i >= i0:
            break
        checks += 1
        r = residue(i, m)
        d = 6 * i + 1
        if N - r >= d and (N - r) % d == 0:
            return verdict(i, checks)
    return verdict(i0, checks)


def excluded_set_stream(m: int, N_max: int) -> Iterator[tuple[int, ExclusionWitness]]:
    """Every ``N`` in ``2..N_max`` with composite P, ascending, smallest-i witness.

    Each ``i`` contributes the progression ``residue(i, m) + (6i+1)*a``; the
    progressions are merged through a heap keyed on (next value, i), so a
    value reached from several ``i`` is emitted once with the smallest.
    """
    if N_max < 2:
        raise ValueError(f"N_max must be >= 2, got {N_max}")
    top = sound_i_bound(N_max, m)
    heap = []
    for i in range(1, top + 1):
        d = 6 * i + 1
        r = residue(i, m)
        if r < 2:
            r += d * ((2 - r + d - 1) // d)
        if r <= N_max:
            heap.append((r, i, d))
    heapq.heapify(heap)
    last = None
    while heap:
        value, i, d = heap[0]
        if value != last:
            last = value
            yield value, _make_witness(value, m, i, 6 ** (m + 1) * value - 1)
        if value + d <= N_max:
            heapq.heapreplace(heap, (value + d, i, d))
        else:
            heapq.heappop(heap)


@dataclass(frozen=True)
class AuditRow:
    m: int
    N: int
    P: int
    sound_witness: ExclusionWitness
    literal_i_range: int
    paper_i_bound: int | None
    missed_by_small_i_scan: bool
    beyond_paper_count: bool


def bound_audit(m: int, N_lo: int, N_hi: int) -> list[AuditRow]:
    """Composite P whose smallest witness lies past the small-i scan.

    For every N in range with composite P, compare the sound witness's ``i``
    with the hand procedure's reach (:func:`literal_i_range`) and with the
    ``N/6 - 2`` count.  Only rows the small-i scan would miss are returned.
    """
    rows = []
    for N, w in excluded_set_stream(m, N_hi):
        if N < N_lo:
            continue
        reach = literal_i_range(N)
        if w.i <= reach:
            continue
        pib = paper_i_bound(N) if N > SMALL_N_LIMIT else None
        rows.append(AuditRow(m, N, 6 ** (m + 1) * N - 1, w, reach, pib, True,
                             pib is not None and w.i > pib))
    return rows

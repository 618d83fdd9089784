"""Consecutive primes from the composite-index equations, plus a baseline.

The wheel sieve never looks at a multiple of 2 or 3.  It keeps one flag per
index ``n`` of each series and crosses out the indices the product formulas
produce: ``6ij - i - j`` and ``6ij + i + j`` in S2, ``6ij - i + j`` and its
mirror ``6ij + i - j`` in S1.  For a fixed ``i`` each formula is an
arithmetic progression in ``j`` whose step is ``6i -+ 1``, so a row of the
enumeration is one strided write.  Starting every row at ``j = i`` is the
square-start rule carried over to index space.

Both sieves count every flag write in ``mark_operations``; that is the
number compared by :func:`compare`.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import isqrt

import numpy as np

from .wheel import Series, U64_MAX

SEGMENT = 2**20
DEFAULT_MAX_SPAN = 2**31
THREADS_ENV = "SEXTIC_SIEVE_THREADS"

WHEEL6 = "wheel6"
ERATOSTHENES = "eratosthenes"


class CapacityError(MemoryError):
    """Requested range exceeds the configured span budget."""


class ConsistencyError(RuntimeError):
    """The two sieves disagreed; always a bug."""


@dataclass(frozen=True)
class SieveRange:
    lo: int
    hi: int

    def __post_init__(self):
        if not (1 <= self.lo <= self.hi):
            raise ValueError(f"need 1 <= lo <= hi, got lo={self.lo}, hi={self.hi}")
        if self.hi > U64_MAX:
            raise ValueError(f"hi = {self.hi} does not fit in 64 bits")


@dataclass(frozen=True)
class SieveStats:
    algorithm: str
    candidates_considered: int
    mark_operations: int
    primes_found: int

    def row(self, rng: SieveRange) -> list:
        return [self.algorithm, rng.lo, rng.hi, self.candidates_considered,
                self.mark_operations, self.primes_found]


def thread_cap() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _strike(flags: np.ndarray, s: int, e: int, start: int, step: int) -> int:
    if start > e:
        return 0
    flags[start - s::step] = True
    return (e - start) // step + 1


def mark_segment(series: Series, s: int, e: int) -> tuple[np.ndarray, int]:
    """Flags for indices ``s..e`` of one series; True means composite.

    Returns the flag array and the number of writes made.
    """
    flags = np.zeros(e - s + 1, dtype=bool)
    marks = 0
    i = 1
    if series is Series.S2:
        # C1: n = j(6i-1) - i, C2: n = j(6i+1) + i, both with j >= i
        while 6 * i * i - 2 * i <= e:
            step = 6 * i - 1
            j = max(i, _ceil_div(s + i, step))
            marks += _strike(flags, s, e, j * step - i, step)
            step = 6 * i + 1
            j = max(i, _ceil_div(s - i, step))
            marks += _strike(flags, s, e, j * step + i, step)
            i += 1
    else:
        # C3: n = j(6i+1) - i with j >= i, mirror n = j(6i-1) + i with j > i
        while 6 * i * i <= e:
            step = 6 * i + 1
            j = max(i, _ceil_div(s + i, step))
            marks += _strike(flags, s, e, j * step - i, step)
            step = 6 * i - 1
            j = max(i + 1, _ceil_div(s - i, step))
            marks += _strike(flags, s, e, j * step + i, step)
            i += 1
    return flags, marks


def _series_bounds(rng: SieveRange, series: Series) -> tuple[int, int]:
    off = series.value
    lo_n = max(1, _ceil_div(rng.lo - off, 6))
    hi_n = (rng.hi - off) // 6
    return lo_n, hi_n


def _segments(lo: int, hi: int, size: int):
    s = lo
    while s <= hi:
        e = min(hi, s + size - 1)
        yield s, e
        s = e + 1


def _check_span(rng: SieveRange, max_span: int) -> None:
    if rng.hi - rng.lo + 1 > max_span:
        raise CapacityError(
            f"range of {rng.hi - rng.lo + 1} values exceeds budget {max_span}")


def _run(tasks, fn, workers):
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


def wheel_sieve(rng: SieveRange, segment: int = SEGMENT,
                max_span: int = DEFAULT_MAX_SPAN,
                workers: int | None = None) -> tuple[list[int], SieveStats]:
    _check_span(rng, max_span)
    workers = thread_cap() if workers is None else workers
    small = [p for p in (2, 3) if rng.lo <= p <= rng.hi]
    tasks = []
    for series in (Series.S1, Series.S2):
        lo_n, hi_n = _series_bounds(rng, series)
        tasks.extend((series, s, e) for s, e in _segments(lo_n, hi_n, segment))

    def work(task):
        series, s, e = task
        flags, marks = mark_segment(series, s, e)
        n = np.arange(s, e + 1, dtype=np.uint64)[~flags]
        return n * np.uint64(6) + np.uint64(1) if series is Series.S2 \
            else n * np.uint64(6) - np.uint64(1), marks, e - s + 1

    results = _run(tasks, work, workers)
    parts = [r[0] for r in results]
    values = np.sort(np.concatenate(parts)) if parts else np.empty(0, np.uint64)
    primes = small + values.tolist()
    stats = SieveStats(WHEEL6, len(small) + sum(r[2] for r in results),
                       sum(r[1] for r in results), len(primes))
    return primes, stats


def _base_primes(limit: int) -> tuple[list[int], int]:
    if limit < 2:
        return [], 0
    flags = np.zeros(limit + 1, dtype=bool)
    flags[:2] = True
    marks = 0
    for p in range(2, isqrt(limit) + 1):
        if not flags[p]:
            flags[p * p::p] = True
            marks += (limit - p * p) // p + 1
    return np.flatnonzero(~flags).tolist(), marks


def eratosthenes(rng: SieveRange, segment: int = SEGMENT,
                 max_span: int = DEFAULT_MAX_SPAN,
                 workers: int | None = None) -> tuple[list[int], SieveStats]:
    """Segmented Sieve of Eratosthenes over every integer in the range."""
    _check_span(rng, max_span)
    workers = thread_cap() if workers is None else workers
    base, base_marks = _base_primes(isqrt(rng.hi))
    lo = max(rng.lo, 2)
    tasks = list(_segments(lo, rng.hi, segment))

    def work(task):
        s, e = task
        flags = np.zeros(e - s + 1, dtype=bool)
        marks = 0
        for p in base:
            marks += _strike(flags, s, e, max(p * p, _ceil_div(s, p) * p), p)
        return np.arange(s, e + 1, dtype=np.uint64)[~flags], marks

    results = _run(tasks, work, workers)
    primes = np.concatenate([r[0] for r in results]).tolist() if results else []
    candidates = max(0, rng.hi - lo + 1)
    stats = SieveStats(ERATOSTHENES, candidates,
                       base_marks + sum(r[1] for r in results), len(primes))
    return primes, stats


@dataclass(frozen=True)
class Comparison:
    range: SieveRange
    wheel: SieveStats
    eratosthenes: SieveStats
    primes: list

    @property
    def ratio(self) -> float | None:
        """Wheel marks over Eratosthenes marks; None when either side made none."""
        if self.wheel.mark_operations == 0 or self.eratosthenes.mark_operations == 0:
            return None
        return self.wheel.mark_operations / self.eratosthenes.mark_operations


def compare(rng: SieveRange, **kw) -> Comparison:
    wp, ws = wheel_sieve(rng, **kw)
    ep, es = eratosthenes(rng, **kw)
    if wp != ep:
        raise ConsistencyError(f"sieves disagree on [{rng.lo}, {rng.hi}]")
    return Comparison(rng, ws, es, wp)

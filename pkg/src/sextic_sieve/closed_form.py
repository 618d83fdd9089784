"""Closed form for ``i**2 mod (A*i + B)`` and its linear residue families.

Writing ``i = A*p + q`` with ``q`` in ``1..A`` (not ``0..A-1``), the quotient
of ``i**2`` by ``A*i + B`` is exactly ``p`` whenever ``A*q > B``, leaving

    R = i*q - B*p = (A*q - B)*p + q**2

For a fixed ``q`` the remainders therefore walk a straight line in ``p``.
With ``(A, B) = (6, 1)`` the six lines are 5p+1, 11p+4, 17p+9, 23p+16,
29p+25 and 35p+36.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Decomposition:
    A: int
    p: int
    q: int

    @property
    def i(self) -> int:
        return self.A * self.p + self.q


@dataclass(frozen=True)
class LinearFamily:
    q: int
    slope: int
    intercept: int
    A: int
    B: int

    def member(self, p: int) -> int:
        return self.slope * p + self.intercept

    def i_at(self, p: int) -> int:
        """The ``i`` whose remainder is ``member(p)``."""
        return self.A * p + self.q


def _require_a_gt_b(A: int, B: int) -> None:
    if B < 1 or A <= B:
        raise ValueError(f"closed form needs A > B >= 1, got A={A}, B={B}")


def decompose(i: int, A: int) -> Decomposition:
    if i < 1 or A < 1:
        raise ValueError(f"decompose needs i >= 1 and A >= 1, got i={i}, A={A}")
    q = (i - 1) % A + 1
    return Decomposition(A, (i - q) // A, q)


def mod_square_closed(i: int, A: int, B: int) -> int:
    """``i**2 mod (A*i + B)`` without squaring or dividing.

    >>> mod_square_closed(7, 6, 1)
    6
    """
    _require_a_gt_b(A, B)
    d = decompose(i, A)
    return i * d.q - B * d.p


def residue_families(A: int, B: int) -> list[LinearFamily]:
    _require_a_gt_b(A, B)
    return [LinearFamily(q, A * q - B, q * q, A, B) for q in range(1, A + 1)]


def family_membership(value: int, A: int, B: int) -> tuple[int, int] | None:
    """Locate ``value`` on one of the residue lines, smallest ``q`` first.

    Returns ``(q, p)`` with ``value == (A*q - B)*p + q**2``, or None when no
    line passes through ``value``.
    """
    _require_a_gt_b(A, B)
    if value < 1:
        raise ValueError(f"membership is defined for positive values, got {value}")
    for fam in residue_families(A, B):
        if fam.intercept > value:
            break  # intercepts q**2 only grow with q
        p, rem = divmod(value - fam.intercept, fam.slope)
        if rem == 0:
            return fam.q, p
    return None

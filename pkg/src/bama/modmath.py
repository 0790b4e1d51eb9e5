"""Euclidean integer division and residue arithmetic.

Python's ``divmod`` already floors toward negative infinity, so for a positive
divisor its remainder is the nonnegative least residue. These wrappers pin that
convention down explicitly and reject nonpositive moduli.
"""
from typing import NamedTuple

from .errors import InvalidModulusError


class DivisionResult(NamedTuple):
    quotient: int
    remainder: int


def _check_modulus(n):
    if n <= 0:
        raise InvalidModulusError(f"modulus must be positive, got {n}")


def divmod_euclid(p: int, n: int) -> DivisionResult:
    """Return ``(a, b)`` with ``p == a * n + b`` and ``0 <= b < n``."""
    _check_modulus(n)
    q, r = divmod(p, n)
    return DivisionResult(q, r)


def mod_residue(p: int, n: int) -> int:
    _check_modulus(n)
    return p % n


def congruent(x: int, y: int, n: int) -> bool:
    """True iff ``x ≡ y (mod n)``."""
    _check_modulus(n)
    return x % n == y % n


def residue_class(r: int, n: int, lo: int, hi: int) -> list:
    """Members of the residue class of ``r`` modulo ``n`` inside ``[lo, hi]``."""
    _check_modulus(n)
    r = r % n
    first = lo + (r - lo) % n
    return list(range(first, hi + 1, n))

"""Exact integer and rational building blocks.

Python integers are arbitrary precision and ``fractions.Fraction`` keeps
values reduced with a positive denominator, so these wrappers only add the
domain conventions the rest of the package relies on (in particular a total
binomial coefficient that is 0 outside ``0 <= l <= n``).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DomainError


def factorial(n: int) -> int:
    """n! for n >= 0."""
    if n < 0:
        raise DomainError(f"factorial requires n >= 0, got {n}")
    return math.factorial(n)


def binomial(n: int, l: int) -> int:
    """C(n, l) for n >= 0, extended by 0 whenever l < 0 or l > n.

    The zero extension keeps lattice recurrences total: neighbours that fall
    off the reachable triangle simply contribute nothing.
    """
    if n < 0:
        raise DomainError(f"binomial requires n >= 0, got {n}")
    if l < 0 or l > n:
        return 0
    return math.comb(n, l)


def generalized_binomial(alpha: Fraction | int, l: int) -> Fraction:
    """C(alpha, l) = alpha (alpha-1) ... (alpha-l+1) / l! for l >= 0.

    ``alpha`` may be any rational; the result is exact.  l = 0 gives 1 (empty
    product).
    """
    if l < 0:
        raise DomainError(f"generalized_binomial requires l >= 0, got {l}")
    product = Fraction(1)
    a = Fraction(alpha)
    for i in range(l):
        product *= a - i
    return product / factorial(l)

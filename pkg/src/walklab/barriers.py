"""Absorbing-barrier distributions and the past-difference calculus.

A barrier at a > 0 is modelled by subtracting a reflected copy of the free
distribution, weighted by (p/(1-p))^a, which zeroes the barrier point while
keeping the one-step recurrence intact.  The delayed barrier sits at the
origin and becomes active after the first step; its signed distribution is
the first past difference of the free walk, and the second past difference
yields the per-step absorption probabilities.

Signed values beyond a barrier are returned as-is (negative); only their
absolute values have a probability reading.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import DomainError
from .walks import (
    LatticeDistribution,
    SignedLatticeValue,
    StepProbability,
    TriangleRow,
    position_probability,
    reachable_points,
)

#: A lattice function as accepted by the past-difference operator.
LatticeFunction = Callable[[int, int, StepProbability], "Fraction | float"]

_HALF = StepProbability.from_exact(Fraction(1, 2))


@dataclass(frozen=True)
class BarrierSpec:
    """An absorbing barrier: either fixed at position >= 1 or delayed at 0."""

    position: int | None = None
    delayed: bool = False

    def __post_init__(self):
        if self.delayed:
            if self.position is not None:
                raise DomainError("the delayed barrier is always at the origin")
        else:
            if self.position is None or self.position < 1:
                raise DomainError("a fixed barrier needs a position >= 1")

    @classmethod
    def at(cls, position: int) -> "BarrierSpec":
        return cls(position=position)

    @classmethod
    def delayed_at_origin(cls) -> "BarrierSpec":
        return cls(delayed=True)

    @property
    def rule(self) -> str:
        return "delayed_barrier" if self.delayed else f"barrier({self.position})"


def barrier_probability(n: int, k: int, a: int, p: StepProbability) -> Fraction | float:
    """Signed passage probability with an absorbing barrier at a >= 1.

    The barrier point itself always carries 0.  p = 1 is rejected: the
    reflection weight divides by 1 - p and there is no sensible limit.
    """
    if n < 0:
        raise DomainError(f"step index must be >= 0, got {n}")
    if a < 1:
        raise DomainError(f"barrier position must be >= 1, got {a}")
    if (p.exact == 1) if p.is_exact else (p.real == 1.0 or p.real_complement == 0.0):
        raise DomainError("barrier distributions are undefined for p = 1")
    weight = (p.value / p.complement) ** a
    return position_probability(n, k, p) - weight * position_probability(n, k - 2 * a, p)


def past_difference(f: LatticeFunction, n: int, k: int, p: StepProbability) -> Fraction | float:
    """(1-p) f(n-1, k+1, p) - p f(n-1, k-1, p).

    A backward-in-time finite difference along k: the (signed) imbalance of
    the two ways the walk can have arrived.  Undefined before the first step.
    """
    if n < 1:
        raise DomainError("the past difference needs at least one completed step")
    return p.complement * f(n - 1, k + 1, p) - p.value * f(n - 1, k - 1, p)


def iterated_past_difference(f: LatticeFunction, order: int) -> LatticeFunction:
    """The past-difference operator applied ``order`` times to f."""
    if order < 0:
        raise DomainError(f"order must be >= 0, got {order}")
    g = f
    for _ in range(order):
        def g(n, k, p, _inner=g):
            return past_difference(_inner, n, k, p)
    return g


def delayed_barrier_probability(n: int, k: int, p: StepProbability) -> Fraction | float:
    """Signed distribution of the walk absorbed on revisiting the origin.

    This is the first past difference of the free walk; its absolute value
    is the probability of reaching k after step n with the walk still alive.
    For n >= 1 it also equals (-k/n) times the free probability, and it
    vanishes at the origin for even n >= 2.  The n = 0 value is stored as +1
    (only its absolute value is constrained).
    """
    if n < 0:
        raise DomainError(f"step index must be >= 0, got {n}")
    if n == 0:
        return p.one if k == 0 else p.zero
    return past_difference(position_probability, n, k, p)


def second_past_difference(n: int, k: int, p: StepProbability) -> Fraction | float:
    """The past-difference operator applied twice to the free walk (n >= 2).

    Expanded into free-walk values this is
    (1-p)^2 f(n-2, k+2) + p^2 f(n-2, k-2) - 2p(1-p) f(n-2, k).
    """
    if n < 2:
        raise DomainError(f"the second past difference needs n >= 2, got {n}")
    pv, qv = p.value, p.complement
    return (
        qv**2 * position_probability(n - 2, k + 2, p)
        + pv**2 * position_probability(n - 2, k - 2, p)
        - 2 * pv * qv * position_probability(n - 2, k, p)
    )


def absorption_probability(n: int, p: StepProbability) -> Fraction | float:
    """Probability of absorption at the delayed barrier exactly after step 2n.

    Equals the absolute central second past difference, i.e. the central
    free-walk probability divided by 2n - 1.
    """
    if n < 1:
        raise DomainError(f"absorption index must be >= 1, got {n}")
    return position_probability(2 * n, 0, p) / (2 * n - 1)


def barrier_row(n: int, spec: BarrierSpec, p: StepProbability) -> LatticeDistribution:
    """Row n of the barrier distribution selected by ``spec``."""
    if n < 0:
        raise DomainError(f"step index must be >= 0, got {n}")
    if spec.delayed:
        values = {k: delayed_barrier_probability(n, k, p) for k in reachable_points(n)}
    else:
        values = {
            k: barrier_probability(n, k, spec.position, p) for k in reachable_points(n)
        }
    return LatticeDistribution(n=n, rule=spec.rule, values=values)


def delayed_barrier_row(n: int, p: StepProbability) -> LatticeDistribution:
    return barrier_row(n, BarrierSpec.delayed_at_origin(), p)


def delayed_barrier_triangle(max_n: int) -> list[TriangleRow]:
    """Rows 1..max_n of the symmetric delayed-barrier walk times 2^-n.

    The scaled entries are signed integers; the center entries vanish for
    even n and the entries at k = -1 for odd n carry the absorption
    probabilities of the following step.
    """
    if max_n < 1:
        raise DomainError(f"max_n must be >= 1, got {max_n}")
    rows = []
    for n in range(1, max_n + 1):
        entries = tuple(
            SignedLatticeValue(k, delayed_barrier_probability(n, k, _HALF))
            for k in reachable_points(n)
        )
        rows.append(TriangleRow(n=n, entries=entries))
    return rows

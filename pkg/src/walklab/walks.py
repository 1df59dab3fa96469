"""Bernoulli walk distributions on the integer lattice.

A walk starts at the origin and on every trial steps +1 with probability p
and -1 with probability 1-p.  After n steps the point k is reachable exactly
when n+k and n-k are nonnegative even numbers; unreachable points carry
probability 0 rather than being errors, which keeps the difference calculus
in :mod:`walklab.barriers` total.

Every operation runs in one of two modes decided by how the step probability
was built: exact mode (values are ``fractions.Fraction``) when p is rational,
real mode (floats) otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import exact
from .errors import DomainError

#: Absolute tolerance for the 4p(1-p) = x^2 linkage between a step
#: probability and its series argument (real mode; exact mode requires
#: equality).
LINKAGE_TOL = 1e-12


def _rational_sqrt(value: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if value < 0:
        return None
    root_num = math.isqrt(value.numerator)
    root_den = math.isqrt(value.denominator)
    if root_num * root_num == value.numerator and root_den * root_den == value.denominator:
        return Fraction(root_num, root_den)
    return None


def _is_exact_number(value) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


@dataclass(frozen=True)
class StepProbability:
    """Probability of a positive step, carried exactly when possible.

    ``real`` is always present; ``exact`` is set when the probability is a
    known rational, in which case ``real == float(exact)``.  The complement
    1 - p is stored separately so that probabilities derived from a series
    argument keep full relative precision on both sides (the complement of a
    float near 1 would otherwise lose most of its significant digits to
    cancellation, which high powers then amplify).
    """

    real: float
    exact: Fraction | None = None
    real_complement: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.real <= 1.0:
            raise DomainError(f"step probability must lie in [0, 1], got {self.real}")
        if self.exact is not None:
            if not 0 <= self.exact <= 1:
                raise DomainError(f"step probability must lie in [0, 1], got {self.exact}")
            if float(self.exact) != self.real:
                raise DomainError("real field must be the rounding of the exact field")
        if self.real_complement is None:
            derived = float(1 - self.exact) if self.exact is not None else 1.0 - self.real
            object.__setattr__(self, "real_complement", derived)
        elif not 0.0 <= self.real_complement <= 1.0 or abs(self.real + self.real_complement - 1.0) > 1e-12:
            raise DomainError("real_complement must represent 1 - p")

    @classmethod
    def from_exact(cls, value: Fraction | int | str) -> "StepProbability":
        frac = Fraction(value)
        return cls(real=float(frac), exact=frac)

    @classmethod
    def from_real(cls, value: float) -> "StepProbability":
        return cls(real=float(value), exact=None)

    @classmethod
    def parse(cls, text: str) -> "StepProbability":
        """Parse 'a/b' or an integer literal as exact, anything else as real."""
        text = text.strip()
        if "/" in text:
            return cls.from_exact(Fraction(text))
        try:
            return cls.from_exact(int(text))
        except ValueError:
            return cls.from_real(float(text))

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def value(self) -> Fraction | float:
        return self.exact if self.exact is not None else self.real

    @property
    def complement(self) -> Fraction | float:
        """1 - p in the active mode."""
        return 1 - self.exact if self.exact is not None else self.real_complement

    @property
    def zero(self) -> Fraction | float:
        return Fraction(0) if self.exact is not None else 0.0

    @property
    def one(self) -> Fraction | float:
        return Fraction(1) if self.exact is not None else 1.0


def p_from_x(x, branch: str = "plus") -> StepProbability:
    """Step probability (1 +/- sqrt(1-x^2)) / 2 for a series argument x.

    The two branches are the two solutions of 4p(1-p) = x^2; both give the
    same return probabilities.  x = +/-1 collapses to p = 1/2 on either
    branch.  An exact x whose 1-x^2 has a rational square root yields an
    exact probability, every other input falls back to floating point.
    """
    if branch not in ("plus", "minus"):
        raise DomainError(f"branch must be 'plus' or 'minus', got {branch!r}")
    if _is_exact_number(x):
        xq = Fraction(x)
        if abs(xq) > 1:
            raise DomainError(f"series argument must satisfy |x| <= 1, got {x}")
        root = _rational_sqrt(1 - xq * xq)
        if root is not None:
            p = (1 + root) / 2 if branch == "plus" else (1 - root) / 2
            return StepProbability.from_exact(p)
        x = float(x)
    if abs(x) > 1.0:
        raise DomainError(f"series argument must satisfy |x| <= 1, got {x}")
    root = math.sqrt(1.0 - x * x)
    # The small root is computed cancellation-free as x^2 / (2 (1 + root)).
    large = (1.0 + root) / 2.0
    small = (x * x) / (2.0 * (1.0 + root))
    if branch == "plus":
        return StepProbability(real=large, real_complement=small)
    return StepProbability(real=small, real_complement=large)


@dataclass(frozen=True)
class WalkParams:
    """Step probability plus the optional series argument linked to it."""

    p: StepProbability
    x: float | Fraction | None = None

    def __post_init__(self):
        if self.x is None:
            return
        xf = float(self.x)
        if abs(xf) > 1.0:
            raise DomainError(f"series argument must satisfy |x| <= 1, got {self.x}")
        pv = self.p.real
        if abs(4.0 * pv * (1.0 - pv) - xf * xf) > LINKAGE_TOL:
            raise DomainError(
                f"p={pv} and x={self.x} violate the 4p(1-p) = x^2 linkage"
            )
        if self.p.is_exact and _is_exact_number(self.x):
            xq = Fraction(self.x)
            if 4 * self.p.exact * (1 - self.p.exact) != xq * xq:
                raise DomainError(
                    f"exact p={self.p.exact} and x={self.x} violate 4p(1-p) = x^2"
                )

    @classmethod
    def from_p(cls, p: StepProbability) -> "WalkParams":
        return cls(p=p)

    @classmethod
    def from_x(cls, x, branch: str = "plus") -> "WalkParams":
        return cls(p=p_from_x(x, branch), x=x)


@dataclass(frozen=True)
class LatticeDistribution:
    """One row of signed probability values, indexed by reachable k.

    ``rule`` names the generating rule ('free', 'barrier(a)' or
    'delayed_barrier').  Values are immutable after construction and the
    stored k all share the parity of n.
    """

    n: int
    rule: str
    values: Mapping[int, Fraction | float]

    def to_records(self) -> list[dict]:
        """Flat serialization: one record per (n, k) with exact and real fields."""
        records = []
        for k in sorted(self.values):
            v = self.values[k]
            if isinstance(v, Fraction):
                records.append(
                    {
                        "n": self.n,
                        "k": k,
                        "numerator": v.numerator,
                        "denominator": v.denominator,
                        "real_value": float(v),
                    }
                )
            else:
                records.append(
                    {
                        "n": self.n,
                        "k": k,
                        "numerator": None,
                        "denominator": None,
                        "real_value": v,
                    }
                )
        return records


@dataclass(frozen=True)
class SignedLatticeValue:
    """A lattice coordinate together with its signed probability value."""

    k: int
    value: Fraction | float


@dataclass(frozen=True)
class TriangleRow:
    """Row n of a symmetric-walk table with the common 2^-n factor extracted."""

    n: int
    entries: tuple[SignedLatticeValue, ...] = field(default_factory=tuple)

    def scaled_integers(self) -> list[tuple[int, int]]:
        """(k, value * 2^n) pairs; the scaled values are exact integers."""
        out = []
        for entry in self.entries:
            scaled = entry.value * 2 ** self.n
            if isinstance(scaled, Fraction):
                if scaled.denominator != 1:
                    raise DomainError(f"row {self.n} is not a multiple of 2^-{self.n}")
                scaled = scaled.numerator
            out.append((entry.k, int(scaled)))
        return out


_HALF = StepProbability.from_exact(Fraction(1, 2))


def reachable_points(n: int) -> range:
    """Lattice points with the parity of n inside [-n, n]."""
    return range(-n, n + 1, 2)


def position_probability(n: int, k: int, p: StepProbability) -> Fraction | float:
    """Probability that the walk sits at point k after n steps.

    Equals C(n, (n+k)/2) p^((n+k)/2) (1-p)^((n-k)/2) on reachable points and
    0 everywhere else; the start state gives position_probability(0, 0, p) = 1.
    """
    if n < 0:
        raise DomainError(f"step index must be >= 0, got {n}")
    if (n + k) % 2 != 0 or k < -n or k > n:
        return p.zero
    up = (n + k) // 2
    return exact.binomial(n, up) * p.value**up * p.complement ** (n - up)


def symmetric_position_probability(n: int, k: int) -> Fraction:
    """The p = 1/2 specialization: C(n, (n+k)/2) / 2^n on reachable points."""
    return position_probability(n, k, _HALF)


def distribution_row(n: int, params: WalkParams) -> LatticeDistribution:
    """Row n of the walk distribution, built by the one-step recurrence.

    Each new row mixes the two parent points: row[n+1][k] =
    p row[n][k-1] + (1-p) row[n][k+1].  In exact mode every entry is
    cross-checked against the closed form.
    """
    if n < 0:
        raise DomainError(f"step index must be >= 0, got {n}")
    p = params.p
    pv, qv = p.value, p.complement
    zero = p.zero
    row: dict[int, Fraction | float] = {0: p.one}
    for step in range(n):
        row = {
            k: pv * row.get(k - 1, zero) + qv * row.get(k + 1, zero)
            for k in reachable_points(step + 1)
        }
    if p.is_exact:
        for k, v in row.items():
            assert v == position_probability(n, k, p), (n, k)
    return LatticeDistribution(n=n, rule="free", values=row)


def return_probability(n: int, params: WalkParams) -> Fraction | float:
    """Probability of being back at the origin after step 2n.

    Returns are possible only after an even number of steps.  When the
    params carry a series argument x, the result also equals
    C(2n, n) (x/2)^(2n), which is what ties the walk to the gamma series.
    """
    if n < 0:
        raise DomainError(f"return index must be >= 0, got {n}")
    return position_probability(2 * n, 0, params.p)


def position_triangle(max_n: int) -> list[TriangleRow]:
    """Rows 0..max_n of the symmetric walk as integers times 2^-n.

    Row n holds C(n, (n+k)/2) at the reachable k, i.e. the Pascal triangle
    spread over the lattice with the return entries centered at k = 0.
    """
    if max_n < 0:
        raise DomainError(f"max_n must be >= 0, got {max_n}")
    rows = []
    for n in range(max_n + 1):
        entries = tuple(
            SignedLatticeValue(k, symmetric_position_probability(n, k))
            for k in reachable_points(n)
        )
        rows.append(TriangleRow(n=n, entries=entries))
    return rows

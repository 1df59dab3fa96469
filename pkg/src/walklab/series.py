"""Power-series machinery for gamma(x) = 1/sqrt(1-x^2) and zeta(x) = sqrt(1-x^2).

The gamma series terms C(2l, l) (x/2)^(2l) are exactly the walk's return
probabilities under the linkage 4p(1-p) = x^2, and the zeta terms are the
per-step absorption probabilities of the delayed-barrier walk.  Partial sums
are therefore finite physical quantities even at x = +/-1, where the full
gamma series diverges; the closed forms at x = +/-1 are exposed separately so
the two routes can be checked against each other.

Exactness follows the argument type: an ``int`` or ``Fraction`` x makes the
terms rational and the partial sums exact, a ``float`` x selects real mode
with compensated summation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import exact
from .errors import DomainError
from .walks import StepProbability, _is_exact_number, p_from_x  # noqa: F401  (re-exported op)

__all__ = [
    "BinomialSeriesSpec",
    "SeriesPartialSum",
    "StirlingEstimates",
    "binomial_series_term",
    "gamma_term",
    "gamma_partial_sum",
    "gamma_closed_form",
    "zeta_term",
    "zeta_partial_sum",
    "p_from_x",
    "stirling_estimates",
    "photon_energy_ratio",
    "received_energy",
]


@dataclass(frozen=True)
class BinomialSeriesSpec:
    """Exponent and argument of a binomial series sum_l C(alpha, l) z^l.

    Evaluation is only meaningful for |z| < 1 unless alpha is a nonnegative
    integer (then the series is a finite polynomial).
    """

    alpha: Fraction
    z: Fraction | float

    def __post_init__(self):
        finite = _is_exact_number(self.alpha) and Fraction(self.alpha).denominator == 1 and self.alpha >= 0
        if not finite and abs(self.z) >= 1:
            raise DomainError(f"binomial series evaluation needs |z| < 1, got z={self.z}")

    def term(self, l: int) -> Fraction | float:
        return binomial_series_term(self.alpha, l, self.z)


def binomial_series_term(alpha: Fraction | int, l: int, z) -> Fraction | float:
    """C(alpha, l) z^l, exact in the coefficient."""
    if l < 0:
        raise DomainError(f"term index must be >= 0, got {l}")
    coefficient = exact.generalized_binomial(alpha, l)
    if _is_exact_number(z):
        return coefficient * Fraction(z) ** l
    return float(coefficient) * z**l


def _central_fraction(l: int) -> Fraction:
    """C(2l, l) / 4^l, the symmetric central weight."""
    return Fraction(math.comb(2 * l, l), 4**l)


def gamma_term(l: int, x) -> Fraction | float:
    """Term l of the gamma series: C(2l, l) (x/2)^(2l).

    Equals the walk's return probability after step 2l for any p with
    4p(1-p) = x^2.  The float path keeps the central weight exact before the
    final rounding, so it stays accurate for large l where the naive
    coefficient overflows.
    """
    if l < 0:
        raise DomainError(f"term index must be >= 0, got {l}")
    central = _central_fraction(l)
    if _is_exact_number(x):
        return central * Fraction(x) ** (2 * l)
    return float(central) * (x * x) ** l


@dataclass(frozen=True)
class SeriesPartialSum:
    """A truncated gamma or zeta series with its exact value when available."""

    kind: str
    x: float
    n: int
    exact_value: Fraction | None
    real_value: float

    @property
    def value(self) -> Fraction | float:
        return self.exact_value if self.exact_value is not None else self.real_value


def _check_series_args(n: int, x) -> None:
    if n < 0:
        raise DomainError(f"partial-sum index must be >= 0, got {n}")
    if abs(float(x)) > 1.0:
        raise DomainError(f"series argument must satisfy |x| <= 1, got {x}")


def gamma_partial_sum(n: int, x) -> SeriesPartialSum:
    """Sum of the gamma terms for l = 0..n.

    Nondecreasing in n for real x; converges to 1/sqrt(1-x^2) for |x| < 1 and
    grows without bound at x = +/-1, where each partial sum still has the
    exact closed form (2n+1) C(2n, n) / 4^n.
    """
    _check_series_args(n, x)
    if _is_exact_number(x):
        squared = Fraction(x) ** 2
        q_num, q_den = squared.numerator, squared.denominator
        coefficient = 1  # C(2l, l), updated by the ratio 2(2l-1)/l
        q_power = 1
        accumulator = 1  # running numerator over the common denominator (4 q_den)^l
        for l in range(1, n + 1):
            coefficient = coefficient * (2 * (2 * l - 1)) // l
            q_power *= q_num
            accumulator = accumulator * (4 * q_den) + coefficient * q_power
        total = Fraction(accumulator, (4 * q_den) ** n)
        return SeriesPartialSum("gamma", float(x), n, total, float(total))
    z = (x * x) / 4.0
    term = 1.0
    terms = [term]
    for l in range(1, n + 1):
        term *= (2.0 * (2 * l - 1) / l) * z
        terms.append(term)
    return SeriesPartialSum("gamma", float(x), n, None, math.fsum(terms))


def gamma_closed_form(n: int) -> Fraction:
    """Exact value (2n+1) C(2n, n) / 4^n of the gamma partial sum at x = 1."""
    if n < 0:
        raise DomainError(f"partial-sum index must be >= 0, got {n}")
    return (2 * n + 1) * _central_fraction(n)


def zeta_term(l: int, x) -> Fraction | float:
    """Magnitude of term l >= 1 of the zeta series: gamma term over 2l - 1.

    Under the 4p(1-p) = x^2 linkage this is the probability of absorption at
    the delayed barrier exactly after step 2l.  The sign convention (the terms
    are subtracted from 1) lives in :func:`zeta_partial_sum`.
    """
    if l < 1:
        raise DomainError(f"zeta term index must be >= 1, got {l}")
    if _is_exact_number(x):
        return Fraction(math.comb(2 * l, l) // (2 * l - 1), 4**l) * Fraction(x) ** (2 * l)
    return gamma_term(l, x) / (2 * l - 1)


def zeta_partial_sum(n: int, x) -> SeriesPartialSum:
    """1 minus the zeta terms for l = 1..n.

    Nonincreasing in n and bounded below by 0 on |x| <= 1; this is the
    probability that the delayed-barrier walk survives its first 2n steps.
    At x = +/-1 the partial sum collapses to the central free-walk value
    C(2n, n) / 4^n.
    """
    _check_series_args(n, x)
    if _is_exact_number(x):
        squared = Fraction(x) ** 2
        q_num, q_den = squared.numerator, squared.denominator
        coefficient = 1
        q_power = 1
        accumulator = 0
        for l in range(1, n + 1):
            coefficient = coefficient * (2 * (2 * l - 1)) // l
            q_power *= q_num
            # C(2l, l) is divisible by 2l - 1, so each term stays integral
            # over the common denominator (4 q_den)^l.
            accumulator = accumulator * (4 * q_den) + (coefficient // (2 * l - 1)) * q_power
        total = 1 - Fraction(accumulator, (4 * q_den) ** n)
        return SeriesPartialSum("zeta", float(x), n, total, float(total))
    z = (x * x) / 4.0
    gamma_t = 1.0
    terms = []
    for l in range(1, n + 1):
        gamma_t *= (2.0 * (2 * l - 1) / l) * z
        terms.append(gamma_t / (2 * l - 1))
    return SeriesPartialSum("zeta", float(x), n, None, 1.0 - math.fsum(terms))


@dataclass(frozen=True)
class StirlingEstimates:
    """Named large-n asymptotics; diagnostics only, never substituted for exact values."""

    central_return: float  # central free-walk probability after 2n steps
    gamma_sum: float  # gamma partial sum at x = 1
    zeta_sum: float  # zeta partial sum at x = 1
    absorption: float  # absorption probability after step 2n


def stirling_estimates(n: int) -> StirlingEstimates:
    """The four Stirling-formula estimates at return index n >= 1.

    central_return and zeta_sum share the asymptotic 1/sqrt(pi n); gamma_sum
    grows like sqrt(4n/pi) and absorption falls like 1/sqrt(4 pi n^3).
    """
    if n < 1:
        raise DomainError(f"Stirling estimates need n >= 1, got {n}")
    return StirlingEstimates(
        central_return=1.0 / math.sqrt(math.pi * n),
        gamma_sum=math.sqrt(4.0 * n / math.pi),
        zeta_sum=1.0 / math.sqrt(math.pi * n),
        absorption=1.0 / math.sqrt(4.0 * math.pi * n**3),
    )


def photon_energy_ratio(x) -> float:
    """sqrt(1 - x^2): the escaping fraction of the emitted energy."""
    xf = float(x)
    if abs(xf) > 1.0:
        raise DomainError(f"energy ratio needs |x| <= 1, got {x}")
    return math.sqrt(1.0 - xf * xf)


def received_energy(e_emitted: float, x) -> float:
    """Maximal received energy e_emitted * sqrt(1 - x^2)."""
    if e_emitted < 0:
        raise DomainError(f"emitted energy must be >= 0, got {e_emitted}")
    return e_emitted * photon_energy_ratio(x)

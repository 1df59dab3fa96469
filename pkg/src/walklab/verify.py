"""Cross-validation suites: exact identities, asymptotic bounds, stochastic agreement.

Every check is self-contained and reports a single pass/fail with a short
detail string; the exact suite admits zero tolerance (rational equality),
the asymptotic suite checks explicit error bounds, and the stochastic suite
compares Monte Carlo runs against the exact distributions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .barriers import (
    absorption_probability,
    barrier_probability,
    delayed_barrier_probability,
    delayed_barrier_triangle,
    past_difference,
    second_past_difference,
)
from .series import gamma_closed_form, gamma_partial_sum, zeta_partial_sum
from .simulate import (
    BARRIER_DELAYED,
    SimulationConfig,
    compare_report,
    run_absorbing_walks,
    run_free_walks,
)
from .walks import (
    StepProbability,
    WalkParams,
    distribution_row,
    position_probability,
    position_triangle,
    reachable_points,
    return_probability,
    symmetric_position_probability,
)

_HALF = StepProbability.from_exact(Fraction(1, 2))
_EXACT_PS = tuple(StepProbability.from_exact(f) for f in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)))
_NORMALIZATION_PS = tuple(
    StepProbability.from_exact(f)
    for f in (Fraction(0), Fraction(1, 10), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))
)
_BARRIER_POSITIONS = (1, 2, 3)


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str


def _result(suite, name, failures, detail):
    if failures:
        return CheckResult(suite, name, False, f"{detail}; first failure at {failures[0]}")
    return CheckResult(suite, name, True, detail)


def _log_grid(low: int, high: int, points: int) -> list[int]:
    """Distinct integers, roughly log-spaced over [low, high]."""
    raw = (
        round(10 ** (math.log10(low) + i * (math.log10(high) - math.log10(low)) / (points - 1)))
        for i in range(points)
    )
    return sorted({min(max(v, low), high) for v in raw})


# ---------------------------------------------------------------------------
# exact identities
# ---------------------------------------------------------------------------


def exact_suite(max_n: int = 40) -> list[CheckResult]:
    checks = [
        _check_normalization(max_n),
        _check_free_recurrence(max_n),
        _check_closed_vs_recurrence(max_n),
        _check_symmetry(max_n),
        _check_index_reversal(max_n),
        _check_degenerate_p(max_n),
        _check_barrier_recurrence(max_n),
        _check_barrier_boundary(max_n),
        _check_compact_form(max_n),
        _check_operator_composition(max_n),
        _check_central_value(max_n),
        _check_time_difference(max_n),
        _check_absorption_split(max_n),
        _check_antisymmetry(max_n),
        _check_barrier_shift(max_n),
        _check_triangles(max(8, min(max_n, 12))),
        _check_gamma_closed_form(max(100, max_n)),
        _check_zeta_closed_form(max(100, max_n)),
        _check_induction_step(500),
        _check_telescoping(500),
        _check_branch_equivalence(),
        _check_divergence_witness(),
    ]
    return checks


def _check_normalization(max_n):
    failures = []
    for p in _NORMALIZATION_PS:
        for n in range(max_n + 1):
            total = sum(position_probability(n, k, p) for k in reachable_points(n))
            if total != 1:
                failures.append((n, p.exact))
    return _result("exact", "normalization", failures, f"sum_k = 1, n<={max_n}, 6 rational p")


def _check_free_recurrence(max_n):
    failures = []
    for p in _EXACT_PS:
        params = WalkParams.from_p(p)
        prev = distribution_row(0, params).values
        pv = p.value
        for n in range(1, max_n + 1):
            current = distribution_row(n, params).values
            for k in reachable_points(n):
                expected = pv * prev.get(k - 1, Fraction(0)) + (1 - pv) * prev.get(k + 1, Fraction(0))
                if current[k] != expected:
                    failures.append((n, k, p.exact))
            prev = current
    return _result("exact", "free_recurrence", failures, f"one-step recurrence, n<={max_n}")


def _check_closed_vs_recurrence(max_n):
    failures = []
    for p in _EXACT_PS:
        params = WalkParams.from_p(p)
        for n in range(max_n + 1):
            row = distribution_row(n, params).values
            for k, v in row.items():
                if v != position_probability(n, k, p):
                    failures.append((n, k, p.exact))
    return _result("exact", "closed_vs_recurrence", failures, f"closed form = recurrence, n<={max_n}")


def _check_symmetry(max_n):
    failures = [
        (n, k)
        for n in range(max_n + 1)
        for k in reachable_points(n)
        if symmetric_position_probability(n, k) != symmetric_position_probability(n, -k)
    ]
    return _result("exact", "symmetry", failures, f"p=1/2 rows symmetric, n<={max_n}")


def _check_index_reversal(max_n):
    failures = []
    for p in _EXACT_PS:
        complement = StepProbability.from_exact(1 - p.exact)
        for n in range(max_n + 1):
            for k in reachable_points(n):
                if position_probability(n, k, p) != position_probability(n, -k, complement):
                    failures.append((n, k, p.exact))
    return _result("exact", "index_reversal", failures, f"reversing k swaps p and 1-p, n<={max_n}")


def _check_degenerate_p(max_n):
    one = StepProbability.from_exact(1)
    zero = StepProbability.from_exact(0)
    failures = []
    for n in range(max_n + 1):
        for k in reachable_points(n):
            drift_up = position_probability(n, k, one)
            drift_down = position_probability(n, k, zero)
            if drift_up != (1 if k == n else 0) or drift_down != (1 if k == -n else 0):
                failures.append((n, k))
    return _result("exact", "degenerate_p", failures, f"p in {{0,1}} drifts deterministically, n<={max_n}")


def _check_barrier_recurrence(max_n):
    failures = []
    for p in _EXACT_PS:
        pv = p.value
        for a in _BARRIER_POSITIONS:
            for n in range(1, max_n):
                for k in reachable_points(n + 1):
                    lhs = barrier_probability(n + 1, k, a, p)
                    rhs = pv * barrier_probability(n, k - 1, a, p) + (1 - pv) * barrier_probability(n, k + 1, a, p)
                    if lhs != rhs:
                        failures.append((n + 1, k, a, p.exact))
    return _result("exact", "barrier_recurrence", failures, f"barrier rows obey the free recurrence, n<={max_n}, a in {{1,2,3}}")


def _check_barrier_boundary(max_n):
    failures = [
        (n, a, p.exact)
        for p in _EXACT_PS
        for a in _BARRIER_POSITIONS
        for n in range(max_n + 1)
        if barrier_probability(n, a, a, p) != 0
    ]
    return _result("exact", "barrier_boundary", failures, f"barrier point carries 0, n<={max_n}")


def _check_compact_form(max_n):
    failures = []
    for p in _EXACT_PS:
        for n in range(1, max_n + 1):
            for k in reachable_points(n):
                if delayed_barrier_probability(n, k, p) != Fraction(-k, n) * position_probability(n, k, p):
                    failures.append((n, k, p.exact))
    return _result("exact", "compact_form", failures, f"delayed barrier = (-k/n) free, n<={max_n}")


def _check_operator_composition(max_n):
    failures = []
    for p in _EXACT_PS:
        for n in range(2, max_n + 1):
            for k in reachable_points(n):
                if second_past_difference(n, k, p) != past_difference(delayed_barrier_probability, n, k, p):
                    failures.append((n, k, p.exact))
    return _result("exact", "operator_composition", failures, f"second difference = difference of first, n<={max_n}")


def _check_central_value(max_n):
    failures = []
    for p in _EXACT_PS:
        for m in range(1, max_n // 2 + 1):
            if second_past_difference(2 * m, 0, p) != -position_probability(2 * m, 0, p) / (2 * m - 1):
                failures.append((m, p.exact))
    return _result("exact", "central_value", failures, f"central second difference, 2n<={max_n}")


def _check_time_difference(max_n):
    failures = []
    for p in _EXACT_PS:
        pv = p.value
        for n in range(2, max_n + 1):
            for k in reachable_points(n):
                lhs = second_past_difference(n, k, p)
                rhs = position_probability(n, k, p) - 4 * pv * (1 - pv) * position_probability(n - 2, k, p)
                if lhs != rhs:
                    failures.append((n, k, p.exact))
    return _result("exact", "time_difference", failures, f"k-difference = weighted n-difference, n<={max_n}")


def _check_absorption_split(max_n):
    failures = []
    for p in _EXACT_PS:
        pv = p.value
        for m in range(1, max_n // 2 + 1):
            lhs = abs(second_past_difference(2 * m, 0, p))
            rhs = (1 - pv) * abs(delayed_barrier_probability(2 * m - 1, 1, p)) + pv * abs(
                delayed_barrier_probability(2 * m - 1, -1, p)
            )
            if lhs != rhs or lhs != absorption_probability(m, p):
                failures.append((m, p.exact))
    return _result("exact", "absorption_split", failures, f"absorption mass splits over k=+-1, 2n<={max_n}")


def _check_antisymmetry(max_n):
    failures = [
        (n, k)
        for n in range(1, max_n + 1)
        for k in reachable_points(n)
        if delayed_barrier_probability(n, k, _HALF) != -delayed_barrier_probability(n, -k, _HALF)
    ]
    return _result("exact", "antisymmetry", failures, f"p=1/2 delayed rows antisymmetric, n<={max_n}")


def _check_barrier_shift(max_n):
    failures = []
    for p in _EXACT_PS:
        pv = p.value
        for n in range(1, max_n + 1):
            for k in reachable_points(n):
                if delayed_barrier_probability(n, k, p) != (1 - pv) * barrier_probability(n - 1, k + 1, 1, p):
                    failures.append((n, k, p.exact))
    return _result("exact", "barrier_shift", failures, f"delayed barrier = shifted barrier at 1, n<={max_n}")


def _check_triangles(max_n):
    failures = []
    free = [[1]]
    for n in range(1, max_n + 1):
        prev = free[-1]
        free.append([1] + [prev[j] + prev[j + 1] for j in range(len(prev) - 1)] + [1])
    for n, row in enumerate(position_triangle(max_n)):
        if [v for _, v in row.scaled_integers()] != free[n]:
            failures.append(("free", n))
    signed = {-1: 1, 1: -1}
    for row in delayed_barrier_triangle(max_n):
        expected = [signed.get(k, 0) for k in range(-row.n, row.n + 1, 2)]
        if [v for _, v in row.scaled_integers()] != expected:
            failures.append(("delayed", row.n))
        signed = {
            k: signed.get(k - 1, 0) + signed.get(k + 1, 0)
            for k in range(-(row.n + 1), row.n + 2, 2)
        }
    return _result("exact", "triangle_tables", failures, f"tables match the Pascal-style recurrences, n<={max_n}")


def _check_gamma_closed_form(max_n):
    failures = [
        n for n in range(max_n + 1) if gamma_partial_sum(n, 1).exact_value != gamma_closed_form(n)
    ]
    return _result("exact", "gamma_closed_form", failures, f"gamma partial sums match the closed form, n<={max_n}")


def _check_zeta_closed_form(max_n):
    failures = [
        n
        for n in range(max_n + 1)
        if zeta_partial_sum(n, 1).exact_value != symmetric_position_probability(2 * n, 0)
    ]
    return _result("exact", "zeta_closed_form", failures, f"zeta partial sums collapse to the central value, n<={max_n}")


def _check_induction_step(max_n):
    failures = [
        n
        for n in range(1, max_n + 1)
        if (2 * n - 1) * symmetric_position_probability(2 * n - 2, 0) + symmetric_position_probability(2 * n, 0)
        != (2 * n + 1) * symmetric_position_probability(2 * n, 0)
    ]
    return _result("exact", "induction_step", failures, f"partial-sum induction step, n<={max_n}")


def _check_telescoping(max_n):
    failures = [
        n
        for n in range(1, max_n + 1)
        if symmetric_position_probability(2 * n - 2, 0) + second_past_difference(2 * n, 0, _HALF)
        != symmetric_position_probability(2 * n, 0)
    ]
    return _result("exact", "telescoping", failures, f"zeta telescoping step, n<={max_n}")


def _check_branch_equivalence():
    failures = []
    for x in (0.1, 0.5, 0.9, 1.0):
        plus = WalkParams.from_x(x, "plus")
        minus = WalkParams.from_x(x, "minus")
        for n in range(51):
            a = return_probability(n, plus)
            b = return_probability(n, minus)
            if abs(a - b) > 1e-12 * max(abs(a), abs(b), 1e-300):
                failures.append((x, n))
    return _result("exact", "branch_equivalence", failures, "both p-branches give equal return probabilities (1e-12 rel)")


def _check_divergence_witness():
    failures = []
    for bound in (10, 100):
        n = math.ceil(math.pi * bound * bound / 4) + 1
        if gamma_partial_sum(n, 1).exact_value <= bound:
            failures.append(bound)
    return _result("exact", "divergence_witness", failures, "gamma partial sums at x=1 pass any bound")


# ---------------------------------------------------------------------------
# asymptotic bounds
# ---------------------------------------------------------------------------


def asymptotic_suite(max_n: int = 10000, points: int = 50) -> list[CheckResult]:
    grid = _log_grid(10, max_n, points)
    gamma_failures = []
    zeta_failures = []
    for n in grid:
        gamma_value = float(gamma_partial_sum(n, 1).exact_value)
        if abs(gamma_value / math.sqrt(4.0 * n / math.pi) - 1.0) > 1.0 / (2 * n):
            gamma_failures.append(n)
        zeta_value = float(zeta_partial_sum(n, 1).exact_value)
        if abs(zeta_value * math.sqrt(math.pi * n) - 1.0) > 1.0 / (4 * n):
            zeta_failures.append(n)
    return [
        _result("asymptotic", "gamma_stirling_bound", gamma_failures, f"|gamma/sqrt(4n/pi) - 1| <= 1/(2n), {len(grid)} n in [10, {max_n}]"),
        _result("asymptotic", "zeta_stirling_bound", zeta_failures, f"|zeta*sqrt(pi n) - 1| <= 1/(4n), {len(grid)} n in [10, {max_n}]"),
    ]


# ---------------------------------------------------------------------------
# stochastic agreement
# ---------------------------------------------------------------------------


def stochastic_suite(walks: int = 1_000_000, seed: int = 7) -> list[CheckResult]:
    checks = []

    config10 = SimulationConfig(p=0.5, max_steps=10, walks=walks, seed=seed, barrier=BARRIER_DELAYED)
    report10 = run_absorbing_walks(config10)
    escape10 = next(e for e in report10.estimates if e.name == "escape")
    expected10 = float(zeta_partial_sum(5, 1).exact_value)
    checks.append(
        CheckResult(
            "stochastic",
            "escape_10_steps",
            escape10.ci_low <= expected10 <= escape10.ci_high,
            f"Wilson 95% of {escape10.value:.5f} covers {expected10:.5f}",
        )
    )

    config100 = SimulationConfig(p=0.5, max_steps=100, walks=walks, seed=seed, barrier=BARRIER_DELAYED)
    report100 = run_absorbing_walks(config100)
    escape100 = next(e for e in report100.estimates if e.name == "escape")
    expected100 = float(zeta_partial_sum(50, 1).exact_value)
    checks.append(
        CheckResult(
            "stochastic",
            "escape_100_steps",
            escape100.ci_low <= expected100 <= escape100.ci_high,
            f"Wilson 95% of {escape100.value:.5f} covers {expected100:.5f}",
        )
    )

    profile_ok = True
    detail = []
    for step, expected in ((2, 0.5), (4, 0.125)):
        est = next(e for e in report10.estimates if e.name == f"first_return[step={step}]")
        profile_ok = profile_ok and est.ci_low <= expected <= est.ci_high
        detail.append(f"step {step}: {est.value:.5f} vs {expected}")
    checks.append(CheckResult("stochastic", "absorption_profile", profile_ok, "; ".join(detail)))

    free_config = SimulationConfig(p=0.5, max_steps=20, walks=walks, seed=seed)
    free_report = run_free_walks(free_config)
    summary = compare_report(free_report, threshold=4.0)
    checks.append(
        CheckResult(
            "stochastic",
            "occupancy_z",
            summary.ok,
            f"max |z| = {max(abs(e.z) for e in summary.entries):.2f} over {len(summary.entries)} statistics",
        )
    )

    small = SimulationConfig(p=0.5, max_steps=10, walks=min(walks, 200_000), seed=seed, barrier=BARRIER_DELAYED)
    serial = run_absorbing_walks(small, workers=1).to_json()
    parallel = run_absorbing_walks(small, workers=4).to_json()
    checks.append(
        CheckResult(
            "stochastic",
            "determinism_parallel",
            serial == parallel,
            "serial and 4-worker reports are byte-identical",
        )
    )
    return checks


def run_suites(suite: str, max_n: int = 40, walks: int = 1_000_000, seed: int = 7) -> list[CheckResult]:
    """Run the selected suite(s); 'all' chains exact, asymptotic, stochastic."""
    checks: list[CheckResult] = []
    if suite in ("all", "exact"):
        checks.extend(exact_suite(max_n if suite == "exact" else 40))
    if suite in ("all", "asymptotic"):
        checks.extend(asymptotic_suite(max_n if suite == "asymptotic" else 10000))
    if suite in ("all", "stochastic"):
        checks.extend(stochastic_suite(walks=walks, seed=seed))
    return checks

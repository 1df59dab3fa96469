"""Series engine: gamma/zeta terms, partial sums, closed forms, asymptotics."""

import math
from fractions import Fraction

import pytest

from walklab import (
    BinomialSeriesSpec,
    DomainError,
    StepProbability,
    WalkParams,
    absorption_probability,
    binomial_series_term,
    gamma_closed_form,
    gamma_partial_sum,
    gamma_term,
    photon_energy_ratio,
    received_energy,
    return_probability,
    second_past_difference,
    stirling_estimates,
    symmetric_position_probability,
    zeta_partial_sum,
    zeta_term,
)
from walklab.series import p_from_x

HALF = StepProbability.from_exact(Fraction(1, 2))


# ---------------------------------------------------------------------------
# binomial series terms
# ---------------------------------------------------------------------------


def test_binomial_series_term_examples():
    z = Fraction(1, 3)
    assert binomial_series_term(Fraction(-1, 2), 1, z) == -z / 2
    assert binomial_series_term(Fraction(1, 2), 2, z) == -(z**2) / 8
    for alpha in (Fraction(-1, 2), Fraction(1, 2), 4):
        assert binomial_series_term(alpha, 0, z) == 1
        assert binomial_series_term(alpha, 0, 0.37) == 1
    assert binomial_series_term(Fraction(-1, 2), 1, 0.5) == pytest.approx(-0.25)


def test_binomial_series_spec_validation():
    spec = BinomialSeriesSpec(alpha=Fraction(-1, 2), z=Fraction(1, 4))
    assert spec.term(1) == -Fraction(1, 8)
    BinomialSeriesSpec(alpha=Fraction(3), z=Fraction(7, 2))  # finite polynomial case
    with pytest.raises(DomainError):
        BinomialSeriesSpec(alpha=Fraction(-1, 2), z=Fraction(3, 2))


# ---------------------------------------------------------------------------
# gamma terms and partial sums
# ---------------------------------------------------------------------------


def test_gamma_term_examples():
    assert gamma_term(0, 1) == 1
    assert gamma_term(0, 0.37) == 1
    assert gamma_term(1, 1) == Fraction(1, 2)
    assert gamma_term(2, 0.6) == pytest.approx(0.0486, abs=1e-16)


def test_gamma_term_equals_return_probability():
    for x in (0.1, 0.5, 0.9, 1.0):
        for branch in ("plus", "minus"):
            params = WalkParams.from_p(p_from_x(x, branch))
            for l in range(51):
                term = gamma_term(l, x)
                walk = return_probability(l, params)
                assert abs(term - walk) <= 1e-12 * max(abs(term), abs(walk), 1e-300)


def test_gamma_term_cross_check_against_linked_walk():
    params = WalkParams.from_x(0.6, "plus")
    assert gamma_term(2, 0.6) == pytest.approx(return_probability(2, params), rel=1e-13)


def test_gamma_partial_sum_examples():
    assert gamma_partial_sum(0, 1).exact_value == 1
    assert gamma_partial_sum(0, 0.4).real_value == 1.0
    total = gamma_partial_sum(2, 1)
    assert total.exact_value == Fraction(15, 8)
    assert total.exact_value == sum(gamma_term(l, 1) for l in range(3))
    assert gamma_partial_sum(200, 0.6).real_value == pytest.approx(1.25, abs=1e-10)


def test_gamma_partial_sum_consistent_with_terms():
    for x in (1, Fraction(9, 10)):
        for n in range(1, 40):
            delta = gamma_partial_sum(n, x).exact_value - gamma_partial_sum(n - 1, x).exact_value
            assert delta == gamma_term(n, x)
    for n in range(1, 40):
        delta = gamma_partial_sum(n, 0.73).real_value - gamma_partial_sum(n - 1, 0.73).real_value
        assert delta == pytest.approx(gamma_term(n, 0.73), rel=1e-12, abs=1e-15)


def test_gamma_closed_form_values():
    assert gamma_closed_form(0) == 1
    assert gamma_closed_form(2) == Fraction(15, 8)
    assert gamma_closed_form(3) == Fraction(35, 16)
    assert gamma_closed_form(3) == 7 * symmetric_position_probability(6, 0)


def test_gamma_partial_sum_matches_closed_form():
    for n in range(301):
        assert gamma_partial_sum(n, 1).exact_value == gamma_closed_form(n)
        assert gamma_partial_sum(n, -1).exact_value == gamma_closed_form(n)


def test_gamma_monotone_in_n():
    for x in (0.0, 0.4, 0.9, 1.0):
        values = [gamma_partial_sum(n, x).real_value for n in range(60)]
        assert all(b >= a for a, b in zip(values, values[1:]))


def test_divergence_witness():
    bound = 10
    n = math.ceil(math.pi * bound * bound / 4) + 1
    assert gamma_partial_sum(n, 1).exact_value > bound


# ---------------------------------------------------------------------------
# zeta terms and partial sums
# ---------------------------------------------------------------------------


def test_zeta_term_examples():
    assert zeta_term(1, 1) == Fraction(1, 2)
    assert zeta_term(2, 1) == Fraction(1, 8)
    assert zeta_term(2, 1) == absorption_probability(2, HALF)
    assert zeta_term(1, 0) == 0
    assert zeta_term(1, 0.0) == 0.0
    with pytest.raises(DomainError):
        zeta_term(0, 1)


def test_zeta_term_matches_central_second_difference():
    for l in range(1, 30):
        p = p_from_x(Fraction(3, 5), "plus")
        assert zeta_term(l, Fraction(3, 5)) == abs(second_past_difference(2 * l, 0, p))


def test_zeta_partial_sum_examples():
    assert zeta_partial_sum(0, 1).exact_value == 1
    assert zeta_partial_sum(2, 1).exact_value == Fraction(3, 8)
    assert zeta_partial_sum(2, 1).exact_value == symmetric_position_probability(4, 0)
    assert zeta_partial_sum(5, 1).exact_value == Fraction(63, 256)


def test_zeta_partial_sum_collapses_to_central_value():
    for n in range(301):
        assert zeta_partial_sum(n, 1).exact_value == symmetric_position_probability(2 * n, 0)


def test_zeta_monotone_and_nonnegative():
    for x in (0.0, 0.4, 0.9, 1.0):
        values = [zeta_partial_sum(n, x).real_value for n in range(60)]
        assert all(b <= a for a, b in zip(values, values[1:]))
        assert all(v >= 0 for v in values)


def test_induction_step():
    for n in range(1, 501):
        lhs = (2 * n - 1) * symmetric_position_probability(2 * n - 2, 0) + symmetric_position_probability(2 * n, 0)
        assert lhs == (2 * n + 1) * symmetric_position_probability(2 * n, 0)


def test_telescoping_step():
    for n in range(1, 501):
        lhs = symmetric_position_probability(2 * n - 2, 0) + second_past_difference(2 * n, 0, HALF)
        assert lhs == symmetric_position_probability(2 * n, 0)


def test_complementarity_away_from_the_edge():
    for x in (0.0, 0.3, -0.3, 0.6, -0.6, 0.9, -0.9):
        product = gamma_partial_sum(400, x).real_value * zeta_partial_sum(400, x).real_value
        assert abs(product - 1.0) <= 1e-8


# ---------------------------------------------------------------------------
# asymptotics and the energy ratio
# ---------------------------------------------------------------------------


def test_stirling_estimate_values():
    est = stirling_estimates(100)
    assert est.central_return == pytest.approx(0.056419, abs=1e-6)
    assert est.gamma_sum == pytest.approx(11.2838, abs=1e-4)
    assert stirling_estimates(1).zeta_sum == pytest.approx(0.564190, abs=1e-6)
    assert est.absorption == pytest.approx(1.0 / math.sqrt(4e6 * math.pi), rel=1e-12)
    with pytest.raises(DomainError):
        stirling_estimates(0)


def test_stirling_bounds_on_sample_grid():
    for n in (10, 20, 50, 100, 300, 1000, 3000, 10000):
        gamma_value = float(gamma_partial_sum(n, 1).exact_value)
        assert abs(gamma_value / math.sqrt(4 * n / math.pi) - 1) <= 1 / (2 * n)
        zeta_value = float(zeta_partial_sum(n, 1).exact_value)
        assert abs(zeta_value * math.sqrt(math.pi * n) - 1) <= 1 / (4 * n)


def test_photon_energy_ratio():
    assert photon_energy_ratio(0) == 1.0
    assert photon_energy_ratio(1) == 0.0
    assert photon_energy_ratio(-1) == 0.0
    assert photon_energy_ratio(0.6) == pytest.approx(0.8, abs=1e-15)
    assert received_energy(2.5, 0.6) == pytest.approx(2.0, abs=1e-14)
    with pytest.raises(DomainError):
        photon_energy_ratio(1.01)
    with pytest.raises(DomainError):
        received_energy(-1.0, 0.5)


def test_partial_sum_domain_errors():
    with pytest.raises(DomainError):
        gamma_partial_sum(-1, 1)
    with pytest.raises(DomainError):
        gamma_partial_sum(3, 1.2)
    with pytest.raises(DomainError):
        zeta_partial_sum(3, -1.2)

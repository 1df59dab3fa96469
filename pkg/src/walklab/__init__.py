"""walklab: exact Bernoulli-walk distributions, barrier calculus, series partial sums,
and a seedable Monte Carlo cross-validator."""

from .barriers import (
    BarrierSpec,
    absorption_probability,
    barrier_probability,
    barrier_row,
    delayed_barrier_probability,
    delayed_barrier_row,
    delayed_barrier_triangle,
    iterated_past_difference,
    past_difference,
    second_past_difference,
)
from .errors import ConfigError, DomainError, WalklabError
from .exact import binomial, factorial, generalized_binomial
from .series import (
    BinomialSeriesSpec,
    SeriesPartialSum,
    StirlingEstimates,
    binomial_series_term,
    gamma_closed_form,
    gamma_partial_sum,
    gamma_term,
    p_from_x,
    photon_energy_ratio,
    received_energy,
    stirling_estimates,
    zeta_partial_sum,
    zeta_term,
)
from .simulate import (
    BARRIER_DELAYED,
    BARRIER_NONE,
    Deviation,
    DeviationSummary,
    Estimate,
    SimulationConfig,
    SimulationReport,
    compare_report,
    run_absorbing_walks,
    run_free_walks,
    wilson_interval,
)
from .walks import (
    LatticeDistribution,
    SignedLatticeValue,
    StepProbability,
    TriangleRow,
    WalkParams,
    distribution_row,
    position_probability,
    position_triangle,
    return_probability,
    symmetric_position_probability,
)

__version__ = "0.1.0"

"""Seedable Monte Carlo ensembles of Bernoulli walks.

Randomness contract
-------------------
The ensemble is split into fixed-size chunks.  Chunk ``i`` draws from its own
substream of the counter-based Philox4x64 generator (numpy's ``Philox`` bit
generator) seeded with ``SeedSequence(entropy=seed, spawn_key=(i,))``.  The
hashed derivation matters: keying Philox directly with adjacent small
integers leaves measurable correlations between chunk substreams (count
variances inflate ~20% over binomial), while SeedSequence-derived keys show
none.  Every walk consumes exactly one uniform double per step, ``max_steps``
in total, whether or not it has been absorbed; a step goes up exactly when
its draw is < p.  Chunk results are integer count maps merged by summation,
which is associative and order-independent, so a report depends only on
(seed, walks, chunk_size, p, max_steps, barrier) and is byte-identical for
any degree of parallelism.

Both barrier modes track the step of the first revisit to the origin (only
possible at even steps); with the delayed barrier that revisit is an
absorption.  The free mode additionally records the occupancy of the final
step.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from .barriers import absorption_probability
from .errors import ConfigError
from .series import zeta_partial_sum
from .walks import StepProbability, position_probability, reachable_points

BARRIER_NONE = "none"
BARRIER_DELAYED = "delayed_at_origin"

#: z for a central 95% normal interval.
_Z95 = 1.959963984540054


def wilson_interval(successes: int, trials: int, z: float = _Z95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion.

    Chosen over the normal approximation because it stays sensible for
    small-probability bins and at the 0/1 boundaries.
    """
    if trials < 1:
        raise ConfigError(f"trials must be >= 1, got {trials}")
    if not 0 <= successes <= trials:
        raise ConfigError(f"successes must lie in [0, trials], got {successes}")
    phat = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (phat + z2 / (2.0 * trials)) / denom
    half = (z / denom) * math.sqrt(phat * (1.0 - phat) / trials + z2 / (4.0 * trials * trials))
    return center - half, center + half


@dataclass(frozen=True)
class SimulationConfig:
    p: float
    max_steps: int
    walks: int
    seed: int
    barrier: str = BARRIER_NONE
    chunk_size: int = 65536

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ConfigError(f"p must lie in [0, 1], got {self.p}")
        if self.max_steps < 2 or self.max_steps % 2 != 0:
            raise ConfigError(f"max_steps must be a positive even integer, got {self.max_steps}")
        if self.walks < 1:
            raise ConfigError(f"walks must be >= 1, got {self.walks}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be a 64-bit value, got {self.seed}")
        if self.barrier not in (BARRIER_NONE, BARRIER_DELAYED):
            raise ConfigError(f"unknown barrier mode {self.barrier!r}")
        if self.chunk_size < 1:
            raise ConfigError(f"chunk_size must be >= 1, got {self.chunk_size}")

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "max_steps": self.max_steps,
            "walks": self.walks,
            "seed": self.seed,
            "barrier": self.barrier,
            "chunk_size": self.chunk_size,
        }


@dataclass(frozen=True)
class Estimate:
    name: str
    value: float
    ci_low: float
    ci_high: float


@dataclass(frozen=True)
class SimulationReport:
    config: SimulationConfig
    first_return_histogram: dict[int, int]
    escaped_count: int
    occupancy_histogram: dict[int, int] | None
    estimates: tuple[Estimate, ...]

    def to_dict(self) -> dict:
        doc = {
            "config": self.config.to_dict(),
            "first_return_histogram": [
                [step, self.first_return_histogram[step]]
                for step in sorted(self.first_return_histogram)
            ],
            "escaped_count": self.escaped_count,
            "estimates": [
                {"name": e.name, "value": e.value, "ci_low": e.ci_low, "ci_high": e.ci_high}
                for e in self.estimates
            ],
        }
        if self.occupancy_histogram is not None:
            doc["occupancy_histogram"] = [
                [k, self.occupancy_histogram[k]] for k in sorted(self.occupancy_histogram)
            ]
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def _chunk_stream(seed: int, index: int) -> np.random.Generator:
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(index,))
    return np.random.Generator(np.random.Philox(seed=sequence))


def _simulate_chunk(config: SimulationConfig, index: int, count: int):
    """One chunk: final positions, first-return counts, and the escape count."""
    rng = _chunk_stream(config.seed, index)
    pos = np.zeros(count, dtype=np.int64)
    returned = np.zeros(count, dtype=bool)
    first_return: dict[int, int] = {}
    for step in range(1, config.max_steps + 1):
        pos += np.where(rng.random(count) < config.p, 1, -1)
        if step % 2 == 0:
            hit = (pos == 0) & ~returned
            hits = int(hit.sum())
            if hits:
                first_return[step] = hits
                returned |= hit
    occupancy = {}
    values, counts = np.unique(pos, return_counts=True)
    for k, c in zip(values.tolist(), counts.tolist()):
        occupancy[int(k)] = int(c)
    escaped = count - int(returned.sum())
    return occupancy, first_return, escaped


def _run(config: SimulationConfig, workers: int):
    if workers < 1:
        raise ConfigError(f"workers must be >= 1, got {workers}")
    chunks = []
    start = 0
    index = 0
    while start < config.walks:
        count = min(config.chunk_size, config.walks - start)
        chunks.append((index, count))
        start += count
        index += 1
    if workers == 1:
        results = [_simulate_chunk(config, i, c) for i, c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_simulate_chunk, config, i, c) for i, c in chunks]
            results = [f.result() for f in futures]
    occupancy: dict[int, int] = {}
    first_return: dict[int, int] = {}
    escaped = 0
    for occ, ret, esc in results:
        for k, c in occ.items():
            occupancy[k] = occupancy.get(k, 0) + c
        for step, c in ret.items():
            first_return[step] = first_return.get(step, 0) + c
        escaped += esc
    return occupancy, first_return, escaped


def _estimates(config, occupancy, first_return, escaped) -> tuple[Estimate, ...]:
    out = []
    if occupancy is not None:
        for k in sorted(occupancy):
            lo, hi = wilson_interval(occupancy[k], config.walks)
            out.append(Estimate(f"occupancy[k={k}]", occupancy[k] / config.walks, lo, hi))
    for step in sorted(first_return):
        lo, hi = wilson_interval(first_return[step], config.walks)
        out.append(Estimate(f"first_return[step={step}]", first_return[step] / config.walks, lo, hi))
    lo, hi = wilson_interval(escaped, config.walks)
    out.append(Estimate("escape", escaped / config.walks, lo, hi))
    return tuple(out)


def run_free_walks(config: SimulationConfig, workers: int = 1) -> SimulationReport:
    """Simulate the free walk: occupancy of the final step plus first returns."""
    if config.barrier != BARRIER_NONE:
        raise ConfigError("run_free_walks needs barrier = 'none'")
    occupancy, first_return, escaped = _run(config, workers)
    return SimulationReport(
        config=config,
        first_return_histogram=first_return,
        escaped_count=escaped,
        occupancy_histogram=occupancy,
        estimates=_estimates(config, occupancy, first_return, escaped),
    )


def run_absorbing_walks(config: SimulationConfig, workers: int = 1) -> SimulationReport:
    """Simulate with the delayed barrier: walks end on revisiting the origin.

    The first-return histogram is then the absorption-step histogram, and the
    escape count collects the walks still alive after max_steps.
    """
    if config.barrier != BARRIER_DELAYED:
        raise ConfigError("run_absorbing_walks needs barrier = 'delayed_at_origin'")
    _, first_return, escaped = _run(config, workers)
    return SimulationReport(
        config=config,
        first_return_histogram=first_return,
        escaped_count=escaped,
        occupancy_histogram=None,
        estimates=_estimates(config, None, first_return, escaped),
    )


@dataclass(frozen=True)
class Deviation:
    name: str
    observed: int
    frequency: float
    expected: float
    z: float


@dataclass(frozen=True)
class DeviationSummary:
    entries: tuple[Deviation, ...]
    threshold: float
    flagged: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.flagged


def compare_report(report: SimulationReport, threshold: float = 4.0) -> DeviationSummary:
    """z-scores of the empirical frequencies against the exact predictions.

    Occupancy bins are checked against the free-walk distribution, the
    first-return bins against the per-step absorption probabilities, and the
    escape fraction against the zeta partial sum at the x linked to p.
    Entries with |z| above the threshold are flagged.
    """
    config = report.config
    walks = config.walks
    p = StepProbability.from_real(config.p)
    entries = []

    def add(name: str, observed: int, expected: float):
        variance = walks * expected * (1.0 - expected)
        if variance <= 0.0:
            z = 0.0 if observed == walks * expected else math.inf
        else:
            z = (observed - walks * expected) / math.sqrt(variance)
        entries.append(Deviation(name, observed, observed / walks, expected, z))

    if report.occupancy_histogram is not None:
        for k in reachable_points(config.max_steps):
            expected = position_probability(config.max_steps, k, p)
            if expected > 0.0:
                add(f"occupancy[k={k}]", report.occupancy_histogram.get(k, 0), expected)
    for step in range(2, config.max_steps + 1, 2):
        expected = absorption_probability(step // 2, p)
        if expected > 0.0:
            add(
                f"first_return[step={step}]",
                report.first_return_histogram.get(step, 0),
                expected,
            )
    x = 2.0 * math.sqrt(config.p * (1.0 - config.p))
    escape_expected = zeta_partial_sum(config.max_steps // 2, x).real_value
    if 0.0 < escape_expected < 1.0:
        add("escape", report.escaped_count, escape_expected)

    flagged = tuple(e.name for e in entries if abs(e.z) > threshold)
    return DeviationSummary(entries=tuple(entries), threshold=threshold, flagged=flagged)


def corrupted_copy(report: SimulationReport, name: str, delta: int) -> SimulationReport:
    """A copy of the report with one count shifted by delta (test hook)."""
    if name == "escape":
        return replace(report, escaped_count=report.escaped_count + delta)
    if name.startswith("occupancy") and report.occupancy_histogram is not None:
        k = int(name[name.index("=") + 1 : -1])
        occupancy = dict(report.occupancy_histogram)
        occupancy[k] = occupancy.get(k, 0) + delta
        return replace(report, occupancy_histogram=occupancy)
    if name.startswith("first_return"):
        step = int(name[name.index("=") + 1 : -1])
        hist = dict(report.first_return_histogram)
        hist[step] = hist.get(step, 0) + delta
        return replace(report, first_return_histogram=hist)
    raise ConfigError(f"unknown statistic {name!r}")

"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Every criterion is pinned at its stated tolerance and runtime budget; the
statistical criteria run at the fixed seed 7 and are fully deterministic.
"""

import math
import time
from fractions import Fraction
from pathlib import Path

from walklab import (
    WalkParams,
    gamma_closed_form,
    gamma_partial_sum,
    gamma_term,
    return_probability,
    symmetric_position_probability,
    zeta_partial_sum,
)
from walklab.cli import main
from walklab.series import p_from_x
from walklab.verify import exact_suite

DATA = Path(__file__).parent / "data"


def check(number: int, description: str, passed: bool, elapsed: float, budget: float):
    within = elapsed < budget
    verdict = "PASS" if (passed and within) else "FAIL"
    print(f"ACCEPTANCE {verdict} [{number:02d}] {description} ({elapsed:.2f}s, budget {budget:.0f}s)")
    assert passed, f"criterion {number}: {description}"
    assert within, f"criterion {number} over budget: {elapsed:.2f}s >= {budget}s"


def test_criterion_01_table1_reproduction(capsys):
    start = time.monotonic()
    code = main(["dist", "--table1", "--max-n", "6"])
    out = capsys.readouterr().out
    golden = (DATA / "table1_max6.csv").read_text()
    elapsed = time.monotonic() - start
    with capsys.disabled():
        check(1, "table1 preset is a bit-exact golden-file match", code == 0 and out == golden, elapsed, 1.0)


def test_criterion_02_table2_reproduction(capsys):
    start = time.monotonic()
    code = main(["dist", "--table2", "--max-n", "6"])
    out = capsys.readouterr().out
    golden = (DATA / "table2_max6.csv").read_text()
    underlined = [row for row in out.splitlines() if row.split(",")[1] == "-1"]
    absorption_ok = [r.split(",")[2] for r in underlined if int(r.split(",")[0]) % 2 == 1] == ["1", "1", "2"]
    elapsed = time.monotonic() - start
    with capsys.disabled():
        check(
            2,
            "table2 preset is bit-exact incl. signs and absorption entries",
            code == 0 and out == golden and absorption_ok,
            elapsed,
            1.0,
        )


def test_criterion_03_gamma_partial_sum_closed_form(capsys):
    start = time.monotonic()
    ok = all(
        gamma_partial_sum(n, 1).exact_value == (2 * n + 1) * Fraction(math.comb(2 * n, n), 4**n)
        for n in range(1001)
    )
    elapsed = time.monotonic() - start
    with capsys.disabled():
        check(3, "gamma partial sums equal (2n+1) C(2n,n)/4^n exactly, n <= 1000", ok, elapsed, 30.0)


def test_criterion_04_zeta_partial_sum_closed_form(capsys):
    start = time.monotonic()
    ok = all(
        zeta_partial_sum(n, 1).exact_value == Fraction(math.comb(2 * n, n), 4**n) for n in range(1001)
    )
    elapsed = time.monotonic() - start
    with capsys.disabled():
        check(4, "zeta partial sums equal C(2n,n)/4^n exactly, n <= 1000", ok, elapsed, 30.0)


def test_criterion_05_stirling_asymptotics(capsys):
    start = time.monotonic()
    grid = sorted(
        {min(max(round(10 ** (1 + i * 3 / 49)), 10), 10000) for i in range(50)}
    )
    ok = True
    for n in grid:
        gamma_value = float(gamma_partial_sum(n, 1).exact_value)
        zeta_value = float(zeta_partial_sum(n, 1).exact_value)
        ok = ok and abs(gamma_value / math.sqrt(4 * n / math.pi) - 1) <= 1 / (2 * n)
        ok = ok and abs(zeta_value * math.sqrt(math.pi * n) - 1) <= 1 / (4 * n)
    elapsed = time.monotonic() - start
    with capsys.disabled():
        check(5, f"Stirling bounds hold on {len(grid)} log-spaced n in [10, 10^4]", ok, elapsed, 10.0)


def test_criterion_06_exact_identity_suite(capsys):
    start = time.monotonic()
    results = exact_suite(max_n=40)
    failures = [c.name for c in results if not c.passed]
    elapsed = time.monotonic() - start
    with capsys.disabled():
        check(
            6,
            f"exact identity suite ({len(results)} checks, zero tolerance): {failures or 'all pass'}",
            not failures,
            elapsed,
            60.0,
        )


def test_criterion_07_series_walk_bridge(capsys):
    start = time.monotonic()
    ok = True
    for x in (0.1, 0.5, 0.9, 1.0):
        for branch in ("plus", "minus"):
            params = WalkParams.from_p(p_from_x(x, branch))
            for l in range(51):
                term = gamma_term(l, x)
                walk = return_probability(l, params)
                ok = ok and abs(term - walk) <= 1e-12 * max(abs(term), abs(walk), 1e-300)
    ok = ok and abs(gamma_partial_sum(200, 0.6).real_value - 1.25) <= 1e-10
    elapsed = time.monotonic() - start
    with capsys.disabled():
        check(7, "series terms match walk return probabilities (1e-12 rel, l <= 50)", ok, elapsed, 5.0)


def test_criterion_08_monte_carlo_escape(capsys):
    from walklab import SimulationConfig, run_absorbing_walks
    from walklab.simulate import BARRIER_DELAYED

    start = time.monotonic()
    ok = True
    for steps, expected in ((10, float(zeta_partial_sum(5, 1).exact_value)),
                            (100, float(symmetric_position_probability(100, 0)))):
        config = SimulationConfig(p=0.5, max_steps=steps, walks=1_000_000, seed=7, barrier=BARRIER_DELAYED)
        report = run_absorbing_walks(config)
        escape = next(e for e in report.estimates if e.name == "escape")
        ok = ok and escape.ci_low <= expected <= escape.ci_high
    elapsed = time.monotonic() - start
    with capsys.disabled():
        check(8, "empirical escape fractions cover 63/256 and C(100,50)/2^100", ok, elapsed, 60.0)


def test_criterion_09_monte_carlo_absorption_profile(capsys):
    from walklab import SimulationConfig, run_absorbing_walks
    from walklab.simulate import BARRIER_DELAYED

    start = time.monotonic()
    config = SimulationConfig(p=0.5, max_steps=4, walks=1_000_000, seed=7, barrier=BARRIER_DELAYED)
    report = run_absorbing_walks(config)
    ok = True
    for step, expected in ((2, 0.5), (4, 0.125)):
        estimate = next(e for e in report.estimates if e.name == f"first_return[step={step}]")
        ok = ok and estimate.ci_low <= expected <= estimate.ci_high
    elapsed = time.monotonic() - start
    with capsys.disabled():
        check(9, "absorption fractions at steps 2 and 4 cover 1/2 and 1/8", ok, elapsed, 60.0)


def test_criterion_10_determinism(capsys):
    start = time.monotonic()
    args = [
        "simulate", "--p", "0.5", "--steps", "10", "--walks", "1000000",
        "--seed", "7", "--barrier", "delayed", "--format", "json",
    ]
    outputs = []
    for workers in ("1", "1", "4", "8"):
        code = main(args + ["--workers", workers])
        outputs.append(capsys.readouterr().out)
        assert code == 0
    ok = all(out == outputs[0] for out in outputs[1:])
    elapsed = time.monotonic() - start
    with capsys.disabled():
        check(10, "repeated and parallel simulate runs are byte-identical", ok, elapsed, 60.0)

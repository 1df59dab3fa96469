"""Command-line surface: distribution tables, series dumps, simulations, verification.

All commands emit CSV (default) or JSON to stdout.  Exact values travel as
numerator/denominator columns next to a decimal rendering fixed at 17
significant digits; the rational columns are authoritative.  Exit codes:
0 success, 1 at least one verification check failed, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

from .barriers import BarrierSpec, barrier_row, delayed_barrier_triangle
from .errors import ConfigError, DomainError
from .series import (
    gamma_closed_form,
    gamma_partial_sum,
    gamma_term,
    stirling_estimates,
    zeta_partial_sum,
    zeta_term,
)
from .simulate import (
    BARRIER_DELAYED,
    BARRIER_NONE,
    SimulationConfig,
    run_absorbing_walks,
    run_free_walks,
)
from .verify import run_suites
from .walks import (
    StepProbability,
    WalkParams,
    distribution_row,
    position_triangle,
    symmetric_position_probability,
)

_DIST_COLUMNS = ("n", "k", "numerator", "denominator", "real_value")
_TABLE_COLUMNS = ("n", "k", "value", "factor")
_SERIES_COLUMNS = (
    "kind",
    "x",
    "l",
    "term_value",
    "term_numerator",
    "term_denominator",
    "partial_sum_value",
    "partial_sum_numerator",
    "partial_sum_denominator",
    "closed_form_value",
    "closed_form_numerator",
    "closed_form_denominator",
    "stirling_estimate",
)
_SIM_COLUMNS = ("record", "index", "count", "frequency", "ci_low", "ci_high")
_VERIFY_COLUMNS = ("suite", "check", "passed", "detail")


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _emit(ns, command: str, args: dict, rows: list[dict], columns, checks=None) -> None:
    if ns.format == "json":
        payload = {"command": command, "args": args, "rows": rows}
        if checks is not None:
            payload["checks"] = checks
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_csv_cell(row.get(c)) for c in columns])


def _parse_exactish(text: str):
    """'a/b' -> Fraction, integer literal -> int, otherwise float."""
    text = text.strip()
    if "/" in text:
        return Fraction(text)
    try:
        return int(text)
    except ValueError:
        return float(text)


def _walk_params(ns) -> WalkParams:
    if ns.p is not None:
        return WalkParams.from_p(StepProbability.parse(ns.p))
    if ns.x is None:
        raise DomainError("a step probability is required: pass --p or --x")
    return WalkParams.from_x(_parse_exactish(ns.x), ns.branch)


def _fraction_fields(value) -> tuple:
    """(decimal, numerator, denominator); the rational half empty in real mode."""
    if isinstance(value, Fraction):
        return float(value), value.numerator, value.denominator
    return value, None, None


# ---------------------------------------------------------------------------
# dist
# ---------------------------------------------------------------------------


def cmd_dist(ns) -> int:
    if ns.table1 or ns.table2:
        if ns.max_n is None:
            raise DomainError("--table1/--table2 require --max-n")
        if ns.table1:
            rows_source = position_triangle(ns.max_n)
        else:
            rows_source = delayed_barrier_triangle(ns.max_n)
        rows = [
            {"n": row.n, "k": k, "value": value, "factor": f"2^{-row.n}"}
            for row in rows_source
            for k, value in row.scaled_integers()
        ]
        args = {"preset": "table1" if ns.table1 else "table2", "max_n": ns.max_n}
        _emit(ns, "dist", args, rows, _TABLE_COLUMNS)
        return 0

    if ns.n is None:
        raise DomainError("dist requires --n (or a table preset)")
    params = _walk_params(ns)
    if ns.barrier is None:
        dist = distribution_row(ns.n, params)
    elif ns.barrier == "delayed":
        dist = barrier_row(ns.n, BarrierSpec.delayed_at_origin(), params.p)
    else:
        dist = barrier_row(ns.n, BarrierSpec.at(int(ns.barrier)), params.p)
    rows = dist.to_records()
    args = {"n": ns.n, "p": ns.p, "x": ns.x, "branch": ns.branch, "barrier": ns.barrier, "rule": dist.rule}
    _emit(ns, "dist", args, rows, _DIST_COLUMNS)
    return 0


# ---------------------------------------------------------------------------
# series
# ---------------------------------------------------------------------------


def cmd_series(ns) -> int:
    if ns.max_n < 0:
        raise DomainError(f"--max-n must be >= 0, got {ns.max_n}")
    x = _parse_exactish(ns.x)
    if abs(float(x)) > 1.0:
        raise DomainError(f"series argument must satisfy |x| <= 1, got {ns.x}")
    at_edge = abs(float(x)) == 1.0
    rows = []
    for l in range(ns.max_n + 1):
        if ns.kind == "gamma":
            term = gamma_term(l, x)
            partial = gamma_partial_sum(l, x)
            closed = gamma_closed_form(l) if at_edge else None
        else:
            term = zeta_term(l, x) if l >= 1 else None
            partial = zeta_partial_sum(l, x)
            closed = symmetric_position_probability(2 * l, 0) if at_edge else None
        row = {"kind": ns.kind, "x": float(x), "l": l}
        row["term_value"], row["term_numerator"], row["term_denominator"] = (
            _fraction_fields(term) if term is not None else (None, None, None)
        )
        row["partial_sum_value"], row["partial_sum_numerator"], row["partial_sum_denominator"] = _fraction_fields(
            partial.value
        )
        row["closed_form_value"], row["closed_form_numerator"], row["closed_form_denominator"] = (
            _fraction_fields(closed) if closed is not None else (None, None, None)
        )
        if ns.with_stirling and l >= 1:
            est = stirling_estimates(l)
            row["stirling_estimate"] = est.gamma_sum if ns.kind == "gamma" else est.zeta_sum
        else:
            row["stirling_estimate"] = None
        rows.append(row)
    args = {"kind": ns.kind, "x": ns.x, "max_n": ns.max_n, "with_stirling": ns.with_stirling}
    _emit(ns, "series", args, rows, _SERIES_COLUMNS)
    return 0


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------


def _resolve_seed(ns) -> int:
    if ns.seed is not None:
        return ns.seed
    env = os.environ.get("WALKLAB_SEED")
    if env is not None:
        return int(env)
    return 0


def cmd_simulate(ns) -> int:
    if ns.p is not None:
        p_real = float(Fraction(ns.p)) if "/" in ns.p else float(ns.p)
    elif ns.x is not None:
        params = WalkParams.from_x(_parse_exactish(ns.x), ns.branch)
        p_real = params.p.real
    else:
        raise DomainError("a step probability is required: pass --p or --x")
    barrier = BARRIER_DELAYED if ns.barrier == "delayed" else BARRIER_NONE
    config = SimulationConfig(
        p=p_real,
        max_steps=ns.steps,
        walks=ns.walks,
        seed=_resolve_seed(ns),
        barrier=barrier,
        chunk_size=ns.chunk_size,
    )
    if barrier == BARRIER_DELAYED:
        report = run_absorbing_walks(config, workers=ns.workers)
    else:
        report = run_free_walks(config, workers=ns.workers)

    rows = []
    if report.occupancy_histogram is not None:
        for k in sorted(report.occupancy_histogram):
            rows.append({"record": "occupancy", "index": k, "count": report.occupancy_histogram[k]})
    for step in sorted(report.first_return_histogram):
        rows.append({"record": "first_return", "index": step, "count": report.first_return_histogram[step]})
    rows.append({"record": "escaped", "index": None, "count": report.escaped_count})
    by_name = {e.name: e for e in report.estimates}
    for row in rows:
        if row["record"] == "occupancy":
            est = by_name.get(f"occupancy[k={row['index']}]")
        elif row["record"] == "first_return":
            est = by_name.get(f"first_return[step={row['index']}]")
        else:
            est = by_name.get("escape")
        if est is not None:
            row["frequency"], row["ci_low"], row["ci_high"] = est.value, est.ci_low, est.ci_high
    args = report.config.to_dict()
    _emit(ns, "simulate", args, rows, _SIM_COLUMNS)
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(ns) -> int:
    checks = run_suites(ns.suite, max_n=ns.max_n, walks=ns.walks, seed=_resolve_seed(ns))
    rows = [
        {"suite": c.suite, "check": c.name, "passed": c.passed, "detail": c.detail}
        for c in checks
    ]
    args = {"suite": ns.suite, "max_n": ns.max_n, "walks": ns.walks, "seed": _resolve_seed(ns)}
    _emit(ns, "verify", args, rows, _VERIFY_COLUMNS, checks=rows)
    failed = [c for c in checks if not c.passed]
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed", file=sys.stderr)
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="walklab",
        description="Bernoulli-walk distributions, barrier calculus, series partial sums, and Monte Carlo cross-checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv", help="output format (default csv)")

    def add_probability(p):
        group = p.add_mutually_exclusive_group()
        group.add_argument("--p", help="step probability, 'a/b' for exact or decimal for real mode")
        group.add_argument("--x", help="series argument in [-1, 1]; p is derived via the chosen branch")
        p.add_argument("--branch", choices=("plus", "minus"), default="plus", help="which root of 4p(1-p)=x^2 (default plus)")

    dist = sub.add_parser("dist", help="distribution rows and the two preset tables")
    dist.add_argument("--n", type=int, help="step index of the row to emit")
    add_probability(dist)
    dist.add_argument("--barrier", help="'delayed' or a positive barrier position")
    dist.add_argument("--table1", action="store_true", help="symmetric-walk triangle, integers times 2^-n")
    dist.add_argument("--table2", action="store_true", help="delayed-barrier triangle, signed integers times 2^-n")
    dist.add_argument("--max-n", dest="max_n", type=int, help="last row for the table presets")
    add_format(dist)
    dist.set_defaults(func=cmd_dist)

    series = sub.add_parser("series", help="gamma/zeta terms and partial sums")
    series.add_argument("--kind", choices=("gamma", "zeta"), required=True)
    series.add_argument("--x", required=True, help="series argument; 'a/b' or integer for exact mode")
    series.add_argument("--max-n", dest="max_n", type=int, required=True, help="last term index")
    series.add_argument("--with-stirling", dest="with_stirling", action="store_true", help="add the Stirling estimate column")
    add_format(series)
    series.set_defaults(func=cmd_series)

    simulate = sub.add_parser("simulate", help="Monte Carlo walk ensembles")
    add_probability(simulate)
    simulate.add_argument("--steps", type=int, required=True, help="steps per walk (even)")
    simulate.add_argument("--walks", type=int, required=True, help="ensemble size")
    simulate.add_argument("--seed", type=int, help="64-bit seed (falls back to WALKLAB_SEED, then 0)")
    simulate.add_argument("--barrier", choices=("none", "delayed"), default="none")
    simulate.add_argument("--chunk-size", dest="chunk_size", type=int, default=65536)
    simulate.add_argument("--workers", type=int, default=1, help="parallel chunks; does not affect the output")
    add_format(simulate)
    simulate.set_defaults(func=cmd_simulate)

    verify = sub.add_parser("verify", help="identity, asymptotic, and stochastic suites")
    verify.add_argument("--suite", choices=("all", "exact", "asymptotic", "stochastic"), default="all")
    verify.add_argument("--max-n", dest="max_n", type=int, default=40, help="range bound for the selected suite")
    verify.add_argument("--walks", type=int, default=1_000_000)
    verify.add_argument("--seed", type=int)
    add_format(verify)
    verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.func(ns)
    except (DomainError, ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

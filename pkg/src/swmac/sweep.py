"""Sweep execution, cross-method comparison, and deterministic CSV output.

A sweep evaluates every (budget, theta, rate, method) combination of a
config in lexicographic index order.  Monte Carlo rows derive their seed
from (master seed, budget index, theta index, rate index), so row values
do not depend on execution order or worker count, and two runs of the same
config produce byte-identical CSV.

Evaluator failures (degenerate closed-form denominators, quadrature
non-convergence) do not abort a sweep; the affected row carries an error
flag and an empty value instead.
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .config import ExperimentConfig, ValidationError
from .copula import DependenceParameter, GainPair, iter_gain_pair_chunks
from .outage import (
    CLOSED_FORM,
    MONTE_CARLO,
    QUADRATURE,
    DegenerateDenominator,
    OutageQuery,
    QuadratureNonConvergence,
    outage_closed_form,
    outage_monte_carlo,
    outage_quadrature,
)
from .regions import (
    PowerBudget,
    RatePoint,
    contains,
    gaussian_region_bounds,
    region_vertices,
    wireless_region_bounds,
)
from .streams import derive_seed

__all__ = [
    "FLAG_OK",
    "SWEEP_HEADER",
    "SweepRow",
    "ComparisonPoint",
    "ComparisonReport",
    "run_outage_sweep",
    "compare_methods",
    "emit_csv",
    "emit_region",
    "emit_samples",
    "emit_comparison_csv",
    "format_value",
]

FLAG_OK = "ok"
FLAG_DEGENERATE = "degenerate-denominator"
FLAG_NONCONVERGENCE = "quadrature-nonconvergence"

#: Bit-exact sweep CSV header.
SWEEP_HEADER = "budget_id,theta,rate,method,op,std_err,flag"

#: z-score magnitude beyond which a quadrature/Monte-Carlo pair is flagged
#: (two-sided normal 99.9% point).
Z_FLAG_THRESHOLD = 3.29


@dataclass(frozen=True)
class SweepRow:
    """One sweep result.  ``op`` and ``std_err`` are None when the
    evaluator failed (see ``flag``) or when inapplicable."""

    budget_id: int
    theta: float
    rate: float
    method: str
    op: Optional[float]
    std_err: Optional[float]
    flag: str


def _evaluate(config: ExperimentConfig, index: tuple[int, int, int, int]) -> SweepRow:
    b_i, t_i, r_i, m_i = index
    theta = config.thetas[t_i]
    rate = config.rate_grid.values()[r_i]
    method = config.methods[m_i]
    query = OutageQuery(
        rate_threshold=rate,
        budget=config.budgets[b_i],
        marginals=config.marginals,
        theta=theta,
    )
    try:
        if method == CLOSED_FORM:
            est = outage_closed_form(query)
        elif method == QUADRATURE:
            est = outage_quadrature(query, tol=config.quad_tol)
        else:
            est = outage_monte_carlo(
                query, config.mc_samples, derive_seed(config.seed, b_i, t_i, r_i)
            )
    except DegenerateDenominator:
        return SweepRow(b_i, theta.theta, rate, method, None, None, FLAG_DEGENERATE)
    except QuadratureNonConvergence:
        return SweepRow(b_i, theta.theta, rate, method, None, None, FLAG_NONCONVERGENCE)
    return SweepRow(
        b_i,
        theta.theta,
        rate,
        method,
        est.value,
        est.std_error,
        est.flag if est.flag is not None else FLAG_OK,
    )


def _evaluate_star(args: tuple[ExperimentConfig, tuple[int, int, int, int]]) -> SweepRow:
    return _evaluate(*args)


def run_outage_sweep(config: ExperimentConfig, workers: int = 1) -> list[SweepRow]:
    """Evaluate the full sweep; returns rows in lexicographic
    (budget, theta, rate, method) index order.

    ``workers`` > 1 fans rows out across processes; 0 means one per CPU.
    Results are identical for any worker count.
    """
    for i, budget in enumerate(config.budgets):
        if not budget.p0 < min(budget.p1, budget.p2):
            raise ValidationError(
                f"budget {i}: outage sweeps need p0 < min(p1, p2) strictly, "
                f"got p0={budget.p0}, p1={budget.p1}, p2={budget.p2}"
            )
    indices = [
        (b, t, r, m)
        for b in range(len(config.budgets))
        for t in range(len(config.thetas))
        for r in range(len(config.rate_grid.values()))
        for m in range(len(config.methods))
    ]
    if workers == 0:
        workers = os.cpu_count() or 1
    if workers < 0:
        raise ValueError(f"workers must be >= 0, got {workers}")
    if workers == 1 or len(indices) <= 1:
        return [_evaluate(config, idx) for idx in indices]
    tasks = [(config, idx) for idx in indices]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        chunksize = max(1, len(tasks) // (workers * 4))
        return list(pool.map(_evaluate_star, tasks, chunksize=chunksize))


@dataclass(frozen=True)
class ComparisonPoint:
    """Pairwise method differences at one (budget, theta, rate) point.

    ``diffs`` maps "methodA|methodB" to value(A) - value(B) for method
    pairs where both rows produced a value.  ``z_quad_mc`` is
    (quadrature - monte-carlo)/std_err when both are present (infinite if
    std_err is 0 and the difference is not).  ``flags`` collects
    noteworthy conditions at this point.
    """

    budget_id: int
    theta: float
    rate: float
    diffs: dict[str, float]
    z_quad_mc: Optional[float]
    closed_form_deviation: Optional[float]
    flags: tuple[str, ...]


@dataclass(frozen=True)
class ComparisonReport:
    points: tuple[ComparisonPoint, ...]
    flag_counts: dict[str, int]

    def summary_lines(self) -> list[str]:
        lines = [f"points compared: {len(self.points)}"]
        for flag in sorted(self.flag_counts):
            lines.append(f"  {flag}: {self.flag_counts[flag]}")
        zs = [abs(p.z_quad_mc) for p in self.points if p.z_quad_mc is not None and math.isfinite(p.z_quad_mc)]
        if zs:
            lines.append(f"max |z| (quadrature vs monte-carlo): {max(zs):.3f}")
        devs = [abs(p.closed_form_deviation) for p in self.points if p.closed_form_deviation is not None]
        if devs:
            lines.append(f"max |closed-form - quadrature|: {max(devs):.6e}")
        return lines


def compare_methods(
    config: ExperimentConfig,
    rows: Optional[Sequence[SweepRow]] = None,
    workers: int = 1,
) -> ComparisonReport:
    """Cross-method comparison over a sweep.

    Runs the sweep if ``rows`` is not supplied.  Requires at least two
    methods in the config.  A closed-form row deviating from quadrature by
    more than 10x the quadrature tolerance is flagged
    ``closed-form-deviation``; a |z| above 3.29 is flagged ``large-z``;
    row-level error and out-of-range flags are propagated and counted.
    """
    if len(config.methods) < 2:
        raise ValidationError("comparison requires at least two methods")
    if rows is None:
        rows = run_outage_sweep(config, workers=workers)

    by_point: dict[tuple[int, float, float], dict[str, SweepRow]] = {}
    for row in rows:
        by_point.setdefault((row.budget_id, row.theta, row.rate), {})[row.method] = row

    points = []
    flag_counts: dict[str, int] = {}

    def bump(flag: str) -> None:
        flag_counts[flag] = flag_counts.get(flag, 0) + 1

    for key in sorted(by_point):
        budget_id, theta, rate = key
        group = by_point[key]
        point_flags: list[str] = []
        for row in group.values():
            if row.flag != FLAG_OK:
                point_flags.append(f"{row.method}:{row.flag}")
        diffs: dict[str, float] = {}
        methods = [m for m in (CLOSED_FORM, QUADRATURE, MONTE_CARLO) if m in group]
        for i, m_a in enumerate(methods):
            for m_b in methods[i + 1 :]:
                row_a, row_b = group[m_a], group[m_b]
                if row_a.op is not None and row_b.op is not None:
                    diffs[f"{m_a}|{m_b}"] = row_a.op - row_b.op

        z: Optional[float] = None
        quad = group.get(QUADRATURE)
        mc = group.get(MONTE_CARLO)
        if quad is not None and mc is not None and quad.op is not None and mc.op is not None:
            diff = quad.op - mc.op
            if mc.std_err and mc.std_err > 0.0:
                z = diff / mc.std_err
            else:
                z = 0.0 if diff == 0.0 else math.inf
            if abs(z) > Z_FLAG_THRESHOLD:
                point_flags.append("large-z")

        deviation: Optional[float] = None
        cf = group.get(CLOSED_FORM)
        if cf is not None and quad is not None and cf.op is not None and quad.op is not None:
            deviation = cf.op - quad.op
            if abs(deviation) > 10.0 * config.quad_tol:
                point_flags.append("closed-form-deviation")

        for flag in point_flags:
            bump(flag)
        points.append(
            ComparisonPoint(
                budget_id=budget_id,
                theta=theta,
                rate=rate,
                diffs=diffs,
                z_quad_mc=z,
                closed_form_deviation=deviation,
                flags=tuple(point_flags),
            )
        )
    return ComparisonReport(points=tuple(points), flag_counts=flag_counts)


def format_value(x: Optional[float]) -> str:
    """Decimal formatting with 12 significant digits; None becomes empty."""
    if x is None:
        return ""
    return format(float(x), ".12g")


def emit_csv(rows: Sequence[SweepRow], path: str | Path) -> None:
    """Write sweep rows as CSV, byte-deterministic for identical inputs.

    Fixed header and column order, 12-significant-digit decimals, line
    feeds as the only separators.
    """
    with open(path, "w", newline="") as fh:
        fh.write(SWEEP_HEADER + "\n")
        for row in rows:
            fh.write(
                ",".join(
                    (
                        str(row.budget_id),
                        format_value(row.theta),
                        format_value(row.rate),
                        row.method,
                        format_value(row.op),
                        format_value(row.std_err),
                        row.flag,
                    )
                )
                + "\n"
            )


def emit_region(
    budget: PowerBudget,
    gains: Optional[GainPair],
    r0: float,
    path: str | Path,
) -> list[tuple[float, float]]:
    """Write the (R1, R2) region vertices at common rate ``r0`` as CSV.

    Uses the instantaneous region when ``gains`` is given, else the
    Gaussian region.  Coordinates are written with full round-trip
    precision so re-reading and re-checking membership is exact.  Returns
    the vertex list.
    """
    bounds = (
        wireless_region_bounds(budget, gains)
        if gains is not None
        else gaussian_region_bounds(budget)
    )
    vertices = region_vertices(bounds, r0)
    for x, y in vertices:
        assert contains(bounds, RatePoint(r0, x, y))
    with open(path, "w", newline="") as fh:
        fh.write("r1,r2\n")
        for x, y in vertices:
            fh.write(f"{x!r},{y!r}\n")
    return vertices


def emit_samples(config: ExperimentConfig, theta_value: float, n: int, path: str | Path) -> None:
    """Write ``n`` correlated gain pairs as CSV (columns g1, g2).

    Deterministic for a fixed config seed; values come from the same
    chunked substreams as the Monte Carlo evaluator.
    """
    theta = DependenceParameter(theta_value)
    with open(path, "w", newline="") as fh:
        fh.write("g1,g2\n")
        for chunk in iter_gain_pair_chunks(theta, config.marginals, n, config.seed):
            for g1, g2 in chunk:
                fh.write(f"{float(g1)!r},{float(g2)!r}\n")


def _method_pairs(methods: Sequence[str]) -> list[tuple[str, str]]:
    ordered = [m for m in (CLOSED_FORM, QUADRATURE, MONTE_CARLO) if m in methods]
    return [(a, b) for i, a in enumerate(ordered) for b in ordered[i + 1 :]]


def emit_comparison_csv(
    report: ComparisonReport, methods: Sequence[str], path: str | Path
) -> None:
    """Write a comparison report as CSV with one row per sweep point."""
    pairs = _method_pairs(methods)
    header = (
        ["budget_id", "theta", "rate"]
        + [f"diff_{a}_{b}" for a, b in pairs]
        + ["z_quad_mc", "flags"]
    )
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for p in report.points:
            row = [str(p.budget_id), format_value(p.theta), format_value(p.rate)]
            for a, b in pairs:
                row.append(format_value(p.diffs.get(f"{a}|{b}")))
            if p.z_quad_mc is None:
                row.append("")
            elif math.isinf(p.z_quad_mc):
                row.append("inf" if p.z_quad_mc > 0 else "-inf")
            else:
                row.append(format_value(p.z_quad_mc))
            row.append(";".join(p.flags))
            writer.writerow(row)

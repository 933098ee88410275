"""Reproduction harness: reference tables, time sweeps, and the scaling fit.

Bundles the published reference data for the small-graph benchmark (ground
degeneracy D per graph, and the evolution time reaching success probability
0.25 on the T' = 1..20 grid), runs the pipeline side by side against it, and
fits the quadratic evolution-time scaling curve.
"""

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import DEFAULT_DYNAMICS_CAP_L, sweep_times
from .encoding import DEFAULT_ENUMERATION_CAP_L, enumerate_degeneracy
from .graphs import extend, generate_graph
from .hamiltonian import build_problem_diagonal

SWEEP_TIMES = list(range(1, 21))
TARGET_PROBABILITY = 0.25


@dataclass(frozen=True)
class ReferenceRow:
    """One benchmark graph: reference degeneracy and evolution time.

    Rows without a generator are benchmark entries whose graph structure is
    known only pictorially in the source data and cannot be rebuilt here;
    they are reported as skipped by design.
    """

    name: str
    generator: str | None
    n_edges: int
    l_total: int
    d_reference: int
    t_reference: float | None = None


TABLE2_ROWS: tuple[ReferenceRow, ...] = (
    ReferenceRow("K1,1", "star:1", 1, 2, 2, 0.0),
    ReferenceRow("K1,2", "star:2", 2, 6, 4, 2.402),
    ReferenceRow("Z4", "path:4", 3, 8, 4, 7.075),
    ReferenceRow("K1,3", "star:3", 3, 8, 12, 2.292),
    ReferenceRow("K3", "complete:3", 3, 8, 12, 2.504),
    ReferenceRow("Z5", "path:5", 4, 15, 8, 19.360),
    ReferenceRow("K1,4", "star:4", 4, 15, 48, 5.557),
    ReferenceRow("C4", "cycle:4", 4, 15, 16, 11.221),
    ReferenceRow("G4_1", None, 4, 15, 12, 16.085),
    ReferenceRow("G4_2", None, 4, 15, 20, 9.311),
    ReferenceRow("G4_3", None, 4, 15, 120, 5.547),
)

TABLE3_ROWS: tuple[ReferenceRow, ...] = (
    ReferenceRow("G5_1", None, 5, 18, 40),
    ReferenceRow("G5_2", None, 5, 18, 28),
    ReferenceRow("G5_3", None, 5, 18, 64),
    ReferenceRow("G5_4", None, 5, 18, 72),
    ReferenceRow("G5_5", None, 5, 18, 48),
    ReferenceRow("G5_6", None, 5, 18, 36),
    ReferenceRow("K1,5", "star:5", 5, 18, 240),
    ReferenceRow("Z6", "path:6", 5, 18, 24),
    ReferenceRow("C5", "cycle:5", 5, 18, 1220),
    ReferenceRow("Z7", "path:7", 6, 21, 32),
    ReferenceRow("K1,6", "star:6", 6, 21, 1440),
    ReferenceRow("G6_1", None, 6, 21, 44),
)


def time_tolerance(row: ReferenceRow) -> float:
    """Acceptance band for evolution times.

    max(10%, 0.25 absolute) in general; a plain 15% band for 15-qubit rows,
    where unreported integrator settings in the reference dominate.
    """
    assert row.t_reference is not None
    if row.l_total >= 15:
        return 0.15 * row.t_reference
    return max(0.10 * row.t_reference, 0.25)


@dataclass(frozen=True)
class FitResult:
    """Least-squares quadratic a*L^2 + b*L + c through (L, mean time) points."""

    coefficients: tuple[float, float, float]
    r_squared: float

    def predict(self, l_value: float) -> float:
        a, b, c = self.coefficients
        return a * l_value * l_value + b * l_value + c


def fit_quadratic(points: list[tuple[float, float]]) -> FitResult:
    """Ordinary least squares fit of a quadratic to (L, mean T') points."""
    if len({l for l, _ in points}) < 3:
        raise ValueError("need at least 3 distinct L values for a quadratic fit")
    l_values = np.array([l for l, _ in points], dtype=np.float64)
    t_values = np.array([t for _, t in points], dtype=np.float64)
    design = np.vander(l_values, 3)
    coeffs, *_ = np.linalg.lstsq(design, t_values, rcond=None)
    predicted = design @ coeffs
    residual = t_values - predicted
    ss_res = float(residual @ residual)
    centered = t_values - t_values.mean()
    ss_tot = float(centered @ centered)
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return FitResult(coefficients=tuple(float(c) for c in coeffs), r_squared=r_squared)


def _run_row(
    row: ReferenceRow,
    run_dynamics: bool,
    dynamics_cap_l: int,
    enumeration_cap_l: int,
    step: float | None,
) -> dict:
    """Compute one report row: degeneracy always, time sweep when requested."""
    out: dict = {
        "graph": row.name,
        "generator": row.generator,
        "e": row.n_edges,
        "l": row.l_total,
        "d_reference": row.d_reference,
        "t_reference": row.t_reference,
    }
    if row.generator is None:
        out["status"] = "skipped-by-design"
        out["reason"] = "graph structure not available"
        return out

    graph = generate_graph(row.generator)
    padded = extend(graph)
    report = enumerate_degeneracy(padded, cap_l=enumeration_cap_l)
    out["d_computed"] = report.d_count
    out["min_cost"] = report.min_cost
    out["d_pass"] = report.d_count == row.d_reference

    if run_dynamics and row.t_reference is not None:
        if row.l_total > dynamics_cap_l:
            out["t_status"] = "skipped-cap"
        else:
            hp = build_problem_diagonal(padded)
            sweep = sweep_times(
                hp, SWEEP_TIMES, TARGET_PROBABILITY, step=step, cap_l=dynamics_cap_l
            )
            tol = time_tolerance(row)
            out["t_computed"] = sweep.interpolated_t
            out["t_tolerance"] = tol
            out["t_pass"] = (
                sweep.interpolated_t is not None
                and abs(sweep.interpolated_t - row.t_reference) <= tol
            )
    out["status"] = "ok"
    return out


def reproduce_table(
    table: str,
    run_dynamics: bool = True,
    dynamics_cap_l: int = DEFAULT_DYNAMICS_CAP_L,
    enumeration_cap_l: int = DEFAULT_ENUMERATION_CAP_L,
    step: float | None = None,
) -> dict:
    """Recompute every row of a reference table and compare within tolerance.

    ``table2`` covers the graphs needing at most 15 qubits (degeneracy and
    evolution times); ``table3`` covers degeneracy only at 18 and 21 qubits.
    The report is deterministic: rerunning produces byte-identical output.
    """
    if table == "table2":
        rows = TABLE2_ROWS
        note = "evolution times interpolated at success probability 0.25 on the 1..20 grid"
    elif table == "table3":
        rows = TABLE3_ROWS
        run_dynamics = False
        note = "degeneracy only; rows grouped by edge count of the named graphs (e=5: 18 qubits, e=6: 21 qubits)"
    else:
        raise ValueError(f"unknown table {table!r}; expected 'table2' or 'table3'")

    report_rows = [
        _run_row(row, run_dynamics, dynamics_cap_l, enumeration_cap_l, step)
        for row in rows
    ]
    checks = []
    for r in report_rows:
        if "d_pass" in r:
            checks.append(r["d_pass"])
        if "t_pass" in r:
            checks.append(r["t_pass"])
    return {
        "table": table,
        "note": note,
        "rows": report_rows,
        "checked": len(checks),
        "passed": sum(bool(c) for c in checks),
        "all_pass": all(checks) if checks else False,
    }


def category_means(rows: list[dict]) -> list[tuple[float, float]]:
    """Mean computed evolution time per qubit count, over rows that ran."""
    by_l: dict[int, list[float]] = {}
    for r in rows:
        t = r.get("t_computed")
        if t is not None and not math.isnan(t):
            by_l.setdefault(r["l"], []).append(t)
    return [(float(l), float(np.mean(ts))) for l, ts in sorted(by_l.items())]

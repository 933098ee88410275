"""Schrodinger-equation integration along the linear schedule.

Integrates i d/dt psi = H(t) psi with H(t) = (1 - t/T) H_mix + (t/T) H_problem
using classic fixed-step fourth-order Runge-Kutta, reports the total success
probability (summed squared overlap with the degenerate ground manifold of
the problem Hamiltonian), sweeps evolution times with linear interpolation
at a target probability, and traces low-lying spectra across the schedule.
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse.linalg

from .errors import CapExceededError, IntegrationAccuracyError
from .hamiltonian import DiagonalHamiltonian, ScheduleParams, apply_h, apply_h0

DEFAULT_DYNAMICS_CAP_L = 16
SPECTRUM_DENSE_CAP_L = 12
SPECTRUM_ITERATIVE_CAP_L = 16
NORM_DRIFT_LIMIT = 1e-6


@dataclass(frozen=True)
class EvolutionResult:
    """Final state of one evolution run plus ground-manifold overlaps.

    ``final_state`` is the raw integrator output; overlaps and the total
    success probability are computed on the renormalized state, with the raw
    norm drift recorded separately.
    """

    final_state: np.ndarray
    ground_indices: tuple[int, ...]
    per_ground_overlap: tuple[float, ...]
    total_success: float
    norm_drift: float
    total_time: float
    step_size: float


@dataclass(frozen=True)
class SweepResult:
    """Success probabilities over a grid of evolution times.

    ``interpolated_t`` is the first time at which the piecewise-linear
    interpolant reaches the target probability (the probability curve may be
    non-monotone; only the first bracketing is reported), or None if the
    target is never reached.  Failed time points carry NaN probabilities.
    """

    times: tuple[float, ...]
    probabilities: tuple[float, ...]
    norm_drifts: tuple[float, ...]
    target: float
    interpolated_t: float | None
    failed_times: tuple[float, ...]


@dataclass(frozen=True)
class SpectrumTrace:
    """k lowest eigenvalues of H(s) per schedule grid point, ascending.

    ``levels`` has shape (len(s_grid), k); rows of failed grid points (an
    unconverged iterative solve) are NaN and listed in ``failed_points``.
    """

    s_grid: tuple[float, ...]
    levels: np.ndarray
    failed_points: tuple[int, ...]


def default_step(hp: DiagonalHamiltonian) -> float:
    """Default integrator step: min(0.01, 0.1 / (1 + max cost))."""
    return min(0.01, 0.1 / (1.0 + float(hp.diag.max())))


def initial_state(l_total: int, cap_l: int = DEFAULT_DYNAMICS_CAP_L) -> np.ndarray:
    """Uniform superposition of all 2^L basis states."""
    if l_total > cap_l:
        raise CapExceededError(f"state needs L = {l_total} qubits, cap is {cap_l}")
    size = 1 << l_total
    return np.full(size, 2.0 ** (-l_total / 2.0), dtype=np.complex128)


def _success_probability(
    state: np.ndarray, ground_indices: np.ndarray
) -> tuple[tuple[float, ...], float, float]:
    norm = float(np.linalg.norm(state))
    drift = abs(norm - 1.0)
    normalized = state / norm
    per_ground = tuple(float(abs(normalized[i]) ** 2) for i in ground_indices)
    return per_ground, float(sum(per_ground)), drift


def evolve(
    hp: DiagonalHamiltonian,
    schedule: ScheduleParams,
    step: float | None = None,
    cap_l: int = DEFAULT_DYNAMICS_CAP_L,
    drift_limit: float = NORM_DRIFT_LIMIT,
) -> EvolutionResult:
    """Integrate one full anneal of duration schedule.total_time.

    Classic RK4 with a fixed step (the last step is shortened to land on T
    exactly).  Raises IntegrationAccuracyError when the final norm drifts
    from 1 by more than ``drift_limit``; rerun with a smaller step in that
    case.  T = 0 returns the initial state unchanged.
    """
    if hp.dim_log2 > cap_l:
        raise CapExceededError(f"evolution needs L = {hp.dim_log2} qubits, cap is {cap_l}")
    if step is None:
        step = default_step(hp)
    max_step = 0.1 / (1.0 + float(hp.diag.max()))
    if step <= 0:
        raise ValueError("step must be positive")
    if step > max_step + 1e-15:
        raise ValueError(f"step {step} exceeds stability bound {max_step:.6g}")

    ground = hp.ground_indices()
    total_time = schedule.total_time
    psi = initial_state(hp.dim_log2, cap_l=cap_l)

    if total_time > 0:
        n_steps = max(1, math.ceil(total_time / step))
        h = total_time / n_steps

        def deriv(t: float, state: np.ndarray) -> np.ndarray:
            return -1j * apply_h(state, schedule.value(t), hp)

        for k in range(n_steps):
            t = k * h
            k1 = deriv(t, psi)
            k2 = deriv(t + 0.5 * h, psi + 0.5 * h * k1)
            k3 = deriv(t + 0.5 * h, psi + 0.5 * h * k2)
            k4 = deriv(t + h, psi + h * k3)
            psi = psi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    else:
        h = step

    per_ground, total_success, drift = _success_probability(psi, ground)
    if drift > drift_limit:
        raise IntegrationAccuracyError(
            f"norm drift {drift:.3e} exceeds {drift_limit:.1e} after T = {total_time}; "
            f"use a smaller step than {h:.3e}"
        )
    return EvolutionResult(
        final_state=psi,
        ground_indices=tuple(int(i) for i in ground),
        per_ground_overlap=per_ground,
        total_success=total_success,
        norm_drift=drift,
        total_time=total_time,
        step_size=h,
    )


def _first_crossing(
    times: list[float], probs: list[float], target: float
) -> float | None:
    """First time the piecewise-linear interpolant reaches the target.

    NaN entries (failed runs) break the chain: no bracketing is attempted
    across them.
    """
    for i, (t, p) in enumerate(zip(times, probs)):
        if math.isnan(p):
            continue
        if p >= target:
            if i == 0 or math.isnan(probs[i - 1]):
                return t
            t_prev, p_prev = times[i - 1], probs[i - 1]
            # p_prev < target <= p here, so the slope is strictly positive
            return t_prev + (target - p_prev) * (t - t_prev) / (p - p_prev)
    return None


def sweep_times(
    hp: DiagonalHamiltonian,
    times: list[float],
    target: float,
    step: float | None = None,
    cap_l: int = DEFAULT_DYNAMICS_CAP_L,
    drift_limit: float = NORM_DRIFT_LIMIT,
) -> SweepResult:
    """Run one evolution per requested time and interpolate at the target.

    A T = 0 point (success probability D / 2^L, the uniform-state overlap) is
    prepended when not already requested, so instances whose initial state
    already meets the target report an interpolated time of 0.
    """
    if not times:
        raise ValueError("times must be non-empty")
    if any(t < 0 for t in times):
        raise ValueError("times must be non-negative")
    if any(b <= a for a, b in zip(times, times[1:])):
        raise ValueError("times must be strictly increasing")
    if not 0.0 <= target <= 1.0:
        raise ValueError("target must lie in [0, 1]")

    run_times = list(times)
    if run_times[0] > 0:
        run_times.insert(0, 0.0)

    probs: list[float] = []
    drifts: list[float] = []
    failed: list[float] = []
    for t in run_times:
        try:
            result = evolve(
                hp, ScheduleParams(t), step=step, cap_l=cap_l, drift_limit=drift_limit
            )
        except IntegrationAccuracyError:
            probs.append(math.nan)
            drifts.append(math.nan)
            failed.append(t)
        else:
            probs.append(result.total_success)
            drifts.append(result.norm_drift)

    return SweepResult(
        times=tuple(run_times),
        probabilities=tuple(probs),
        norm_drifts=tuple(drifts),
        target=target,
        interpolated_t=_first_crossing(run_times, probs, target),
        failed_times=tuple(failed),
    )


def _dense_h0(l_total: int) -> np.ndarray:
    size = 1 << l_total
    h0 = np.zeros((size, size), dtype=np.float64)
    idx = np.arange(size)
    h0[idx, idx] = l_total / 2.0
    for l in range(l_total):
        h0[idx, idx ^ (1 << l)] = -0.5
    return h0


def _deterministic_start(size: int) -> np.ndarray:
    # Fixed generic start vector keeps the iterative eigensolver deterministic
    # (and avoids starting in an exact eigenvector of H(0)).
    v = np.cos(0.7 * np.arange(size) + 0.3)
    return v / np.linalg.norm(v)


def spectrum(
    hp: DiagonalHamiltonian,
    s_grid: list[float],
    k: int,
    dense_cap_l: int = SPECTRUM_DENSE_CAP_L,
    iterative_cap_l: int = SPECTRUM_ITERATIVE_CAP_L,
) -> SpectrumTrace:
    """Trace the k lowest eigenvalues of H(s) over a schedule grid.

    Uses dense symmetric diagonalization up to ``dense_cap_l`` qubits and a
    restarted-Lanczos solve on the matrix-free operator above it.  On the
    iterative path, s = 1 is evaluated exactly by partial-sorting the
    diagonal: a Krylov space built from a single vector cannot resolve the
    multiplicity of exactly degenerate eigenvalues of a diagonal matrix.
    """
    if not s_grid:
        raise ValueError("s_grid must be non-empty")
    if any(not 0.0 <= s <= 1.0 for s in s_grid):
        raise ValueError("schedule values must lie in [0, 1]")
    if k < 1:
        raise ValueError("k must be positive")
    l_total = hp.dim_log2
    size = hp.dim
    if k > size:
        raise ValueError(f"k = {k} exceeds the dimension {size}")
    if l_total > iterative_cap_l:
        raise CapExceededError(
            f"spectrum needs L = {l_total} qubits, cap is {iterative_cap_l}"
        )

    levels = np.full((len(s_grid), k), np.nan)
    failed: list[int] = []

    if l_total <= dense_cap_l:
        h0 = _dense_h0(l_total)
        idx = np.arange(size)
        for i, s in enumerate(s_grid):
            h = (1.0 - s) * h0
            h[idx, idx] += s * hp.diag
            levels[i] = scipy.linalg.eigh(
                h, eigvals_only=True, subset_by_index=(0, k - 1)
            )
    else:
        v0 = _deterministic_start(size)
        for i, s in enumerate(s_grid):
            if s == 1.0:
                levels[i] = np.sort(np.partition(hp.diag, k - 1)[:k])
                continue
            op = scipy.sparse.linalg.LinearOperator(
                (size, size),
                matvec=lambda x, s=s: apply_h(x.astype(np.complex128), s, hp),
                dtype=np.complex128,
            )
            try:
                vals = scipy.sparse.linalg.eigsh(
                    op,
                    k=k,
                    which="SA",
                    v0=v0,
                    ncv=min(size, max(4 * k, 24)),
                    return_eigenvectors=False,
                )
            except scipy.sparse.linalg.ArpackNoConvergence:
                failed.append(i)
                continue
            levels[i] = np.sort(vals.real)

    levels.setflags(write=False)
    return SpectrumTrace(
        s_grid=tuple(float(s) for s in s_grid),
        levels=levels,
        failed_points=tuple(failed),
    )


def manifold_gap(trace: SpectrumTrace, d: int) -> float:
    """Minimum over the grid of level[d] - level[0], skipping failed points.

    With d the eventual ground-manifold dimension this is the relevant gap
    when the plain first-excited gap closes by degeneracy; d = 0 is 0 by
    definition.
    """
    if d < 0:
        raise ValueError("d must be non-negative")
    if d == 0:
        return 0.0
    if trace.levels.shape[1] <= d:
        raise ValueError(f"trace holds {trace.levels.shape[1]} levels, need more than {d}")
    ok = [i for i in range(len(trace.s_grid)) if i not in trace.failed_points]
    if not ok:
        raise ValueError("no successful grid points in trace")
    gaps = trace.levels[ok, d] - trace.levels[ok, 0]
    return float(gaps.min())

"""
Bifurcation sweeps over the mean delay and phase-portrait extraction.
"""
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from model import BaseKernel, ModelParams, equilibrium
from utils.errors import NumericalError

from .integrators import SimConfig, Trajectory, simulate

logger = logging.getLogger(__name__)

# Last-to-previous window amplitude ratio regarded as settled; a ratio below
# the lower bound is still decaying
TREND_BAND = (0.999, 1.1)
AMPLITUDE_WINDOWS = 3
PORTRAIT_SAMPLES = 64
CLOSED_CURVE_TOL = 0.05
# Dense sub-grid placed around expected Hopf delays
REFINE_HALF_WIDTH = 0.15
REFINE_STEP = 0.025


@dataclass(frozen=True)
class BifurcationRow:
    """
    Asymptotic envelope of one run in a sweep.

    error is set (and the extrema are NaN) when the run failed.
    """

    tau_m: float
    n_min: float
    n_max: float
    oscillating: bool
    error: Optional[str] = None

    @property
    def amplitude(self) -> float:
        return self.n_max - self.n_min


@dataclass
class BifurcationSweep:
    """Rows of a sweep sorted by tau_m plus the detected stability changes."""

    kernel: str
    params: ModelParams
    rows: List[BifurcationRow]

    @property
    def transitions(self) -> List[Tuple[float, bool]]:
        """Midpoints of every change of the oscillation flag with the new flag value."""
        valid = [row for row in self.rows if row.error is None]
        changes = []
        for left, right in zip(valid, valid[1:]):
            if left.oscillating != right.oscillating:
                changes.append((0.5 * (left.tau_m + right.tau_m), right.oscillating))
        return changes

    @property
    def onset(self) -> Optional[float]:
        """Detected Hopf location: midpoint of the first flag change."""
        changes = self.transitions
        return changes[0][0] if changes else None

    @property
    def window(self) -> Optional[Tuple[float, float]]:
        """(loss, regain) of stability when the sweep shows a stable-unstable-stable pattern."""
        changes = self.transitions
        for (start, osc_start), (end, osc_end) in zip(changes, changes[1:]):
            if osc_start and not osc_end:
                return start, end
        return None

    @property
    def failures(self) -> List[BifurcationRow]:
        return [row for row in self.rows if row.error is not None]


def window_amplitudes(trajectory: Trajectory, count: int = AMPLITUDE_WINDOWS) -> List[float]:
    """Peak-to-peak amplitude on `count` equal windows after the transient."""
    _, values, _ = trajectory.window()
    return [float(chunk.max() - chunk.min()) for chunk in np.array_split(values, count) if len(chunk)]


def asymptotic_amplitude(amplitudes: Sequence[float]) -> float:
    """
    Aitken extrapolation of a sequence of window amplitudes; falls back to the
    last amplitude when the sequence is not geometric.
    """
    a1, a2, a3 = amplitudes[-3:]
    d1, d2 = a2 - a1, a3 - a2
    curvature = d2 - d1
    if curvature == 0 or d1 * d2 <= 0 or abs(d2) >= abs(d1):
        return a3
    return max(a3 - d2 * d2 / curvature, 0.0)


def amplitude_settled(amplitudes: Sequence[float], tolerance: float) -> bool:
    """True when the last window is below tolerance or the window-to-window ratio is flat."""
    last, previous = amplitudes[-1], amplitudes[-2]
    if last <= tolerance:
        return True
    ratio = last / previous if previous > 0 else 1.0
    return TREND_BAND[0] <= ratio <= TREND_BAND[1]


def settled_run(params: ModelParams, kernel: BaseKernel, tau_m: float,
                config: SimConfig = None) -> Tuple[Trajectory, float]:
    """
    Integrate until the post-transient amplitude trend settles, doubling the
    horizon at most config.max_doublings times.

    Returns:
        tuple: (last trajectory, asymptotic amplitude estimate)
    """
    n_star = equilibrium(params)
    config = (config or SimConfig()).resolve(tau_m, n_star)
    tolerance = config.amplitude_tol * n_star
    doublings = 0
    while True:
        trajectory = simulate(params, kernel, tau_m, config)
        amplitudes = window_amplitudes(trajectory)
        if amplitude_settled(amplitudes, tolerance):
            return trajectory, amplitudes[-1]
        if doublings >= config.max_doublings:
            estimate = asymptotic_amplitude(amplitudes)
            logger.debug(f"tau_m={tau_m}: amplitude trend unsettled after {doublings} doublings "
                         f"(windows={amplitudes}), extrapolated {estimate:.3e}")
            return trajectory, estimate
        doublings += 1
        config = config.doubled()
        logger.debug(f"tau_m={tau_m}: amplitudes {amplitudes} still trending, doubling horizon to {config.t_end}")


def bifurcation_row(params: ModelParams, kernel: BaseKernel, tau_m: float,
                    config: SimConfig = None) -> BifurcationRow:
    """
    Run one point of a sweep. Failures are recorded in the row instead of raised.
    """
    try:
        trajectory, amplitude = settled_run(params, kernel, tau_m, config)
    except (NumericalError, ValueError) as e:
        logger.warning(f"Sweep point tau_m={tau_m} failed: {e}")
        return BifurcationRow(tau_m=tau_m, n_min=math.nan, n_max=math.nan, oscillating=False, error=str(e))

    n_star = equilibrium(params)
    _, values, _ = trajectory.window()
    tail = np.array_split(values, AMPLITUDE_WINDOWS)[-1]
    n_min, n_max = float(tail.min()), float(tail.max())
    if amplitude < n_max - n_min:
        # Extrapolated envelope, centered on the last window
        center = 0.5 * (n_min + n_max)
        n_min, n_max = center - 0.5 * amplitude, center + 0.5 * amplitude
    oscillating = (n_max - n_min) > trajectory.config.amplitude_tol * n_star
    return BifurcationRow(tau_m=tau_m, n_min=n_min, n_max=n_max, oscillating=oscillating)


def _row_task(args):
    return bifurcation_row(*args)


def sweep_delays(tau_min: float, tau_max: float, n_points: int) -> np.ndarray:
    """Evenly spaced mean delays of a sweep."""
    if not (math.isfinite(tau_min) and math.isfinite(tau_max) and 0 < tau_min < tau_max):
        raise ValueError(f"tau range must satisfy 0 < tau_min < tau_max, got ({tau_min}, {tau_max})")
    if n_points < 2:
        raise ValueError(f"n_points must be >= 2, got {n_points}")
    return np.linspace(tau_min, tau_max, n_points)


def refined_delays(tau_min: float, tau_max: float, n_points: int, centers: Sequence[float] = (),
                   half_width: float = REFINE_HALF_WIDTH, step: float = REFINE_STEP) -> np.ndarray:
    """
    Evenly spaced delays merged with a grid of spacing `step` on
    [center - half_width, center + half_width] for every center inside the range.
    The sub-grid is offset by half a step so no delay falls on a center.
    """
    delays = sweep_delays(tau_min, tau_max, n_points)
    if not (step > 0 and half_width >= 0):
        raise ValueError(f"refinement needs step > 0 and half_width >= 0, got ({step}, {half_width})")
    extra = [np.arange(0.5 * step - half_width, half_width, step) + center
             for center in centers if tau_min <= center <= tau_max]
    if not extra:
        return delays
    merged = np.concatenate([delays, *extra])
    merged = np.sort(merged[(merged >= tau_min) & (merged <= tau_max)])
    # Drop near-duplicates left by the merge
    keep = np.concatenate(([True], np.diff(merged) > 1e-9 * tau_max))
    return merged[keep]


def bifurcation_sweep(params: ModelParams, kernel: BaseKernel, tau_range: Tuple[float, float],
                      n_points: int, config: SimConfig = None, workers: int = None,
                      refine_near: Sequence[float] = ()) -> BifurcationSweep:
    """
    One-parameter bifurcation diagram over the mean delay.

    Args:
        params: Model parameters
        kernel: Delay kernel
        tau_range: (tau_min, tau_max), both positive
        n_points: Number of delays (>= 2)
        config: Integration settings shared by all rows
        workers: Process count; defaults to DELAY_LOGISTIC_WORKERS or 1
        refine_near: Delays (e.g. analytic Hopf points) around which the grid is densified

    Returns:
        BifurcationSweep: rows sorted by tau_m
    """
    delays = refined_delays(tau_range[0], tau_range[1], n_points, refine_near)
    workers = workers or int(os.getenv("DELAY_LOGISTIC_WORKERS", "1"))
    config = config or SimConfig()
    tasks = [(params, kernel, float(tau), config) for tau in delays]
    logger.info(f"Bifurcation sweep {kernel.describe()}: {len(delays)} delays in "
                f"[{tau_range[0]}, {tau_range[1]}], workers={workers}")

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row_task, tasks))
    else:
        rows = [_row_task(task) for task in tasks]

    rows.sort(key=lambda row: row.tau_m)
    sweep = BifurcationSweep(kernel=kernel.describe(), params=params, rows=rows)
    if sweep.failures:
        logger.warning(f"{len(sweep.failures)} sweep point(s) failed")
    logger.info(f"Detected transitions: {sweep.transitions}")
    return sweep


@dataclass
class PhasePortrait:
    """Post-transient pairs (n(t), F(t)) and the limit-cycle verdict."""

    n: np.ndarray
    delayed: np.ndarray
    closed_loop: bool
    amplitude: float
    cycle_gap: Optional[float] = None

    @property
    def center(self) -> Tuple[float, float]:
        return float(np.mean(self.n)), float(np.mean(self.delayed))


def _cycle_starts(values: np.ndarray) -> np.ndarray:
    """Indices of upward crossings of the mean level."""
    level = values.mean()
    above = values >= level
    return np.nonzero(~above[:-1] & above[1:])[0] + 1


def _resample(n: np.ndarray, delayed: np.ndarray, count: int) -> np.ndarray:
    phase = np.linspace(0.0, 1.0, len(n))
    grid = np.linspace(0.0, 1.0, count)
    return np.column_stack((np.interp(grid, phase, n), np.interp(grid, phase, delayed)))


def phase_portrait(trajectory: Trajectory, transient: float = None,
                   tolerance: float = CLOSED_CURVE_TOL) -> PhasePortrait:
    """
    Pair n(t) with the delayed channel after the transient and flag a limit cycle.

    The first and last complete cycles (between upward crossings of the mean)
    are resampled by phase; the loop counts as closed when their largest
    distance is below tolerance times the amplitude.

    Raises:
        ValueError: If the trajectory has no samples after the transient
    """
    _, n, delayed = trajectory.window(transient)
    if len(n) == 0:
        raise ValueError("trajectory has no samples after the transient")
    amplitude = float(n.max() - n.min())
    n_star = equilibrium(trajectory.params)
    if amplitude <= trajectory.config.amplitude_tol * n_star:
        return PhasePortrait(n=n, delayed=delayed, closed_loop=False, amplitude=amplitude)

    starts = _cycle_starts(n)
    if len(starts) < 3:
        return PhasePortrait(n=n, delayed=delayed, closed_loop=False, amplitude=amplitude)
    first = _resample(n[starts[0]:starts[1] + 1], delayed[starts[0]:starts[1] + 1], PORTRAIT_SAMPLES)
    last = _resample(n[starts[-2]:starts[-1] + 1], delayed[starts[-2]:starts[-1] + 1], PORTRAIT_SAMPLES)
    gap = float(np.max(np.hypot(*(first - last).T)))
    closed = gap < tolerance * amplitude
    return PhasePortrait(n=n, delayed=delayed, closed_loop=closed, amplitude=amplitude, cycle_gap=gap)

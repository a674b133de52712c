"""
Base figure class.
Contains the shared dataset-writing helpers that every figure preset inherits.
"""
import logging
import os
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Sequence

from model import BaseKernel, ModelParams, equilibrium
from simulation import BifurcationSweep, SimConfig, bifurcation_sweep, phase_portrait, simulate
from stability import HopfPoint, classify, hopf_points_at
from utils.file_utils import ensure_output_directory
from utils.result_writer import (
    BIFURCATION_COLUMNS, PHASE_COLUMNS, TRAJECTORY_COLUMNS, emit_hopf_csv, write_json, write_rows
)

logger = logging.getLogger(__name__)

# Carrying capacity and inflow shared by every preset
PRESET_K = 5.0
PRESET_D = 3.0
# Sweep step as a fraction of tau_m
SWEEP_STEP_PER_DELAY = 0.01
# Sweep history as a fraction of n*; small perturbations decay or grow at the linear rate
SWEEP_HISTORY_FRACTION = 0.99
MAX_SERIES_ROWS = 20000


@dataclass
class FigureBundle:
    """Files written for one figure and its JSON summary."""

    figure_id: str
    files: List[str] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)


class BaseFigure(ABC):
    """
    Base class for all figure presets.
    Child classes implement build() with their parameter sets and call the
    helpers below to emit CSV datasets; run() adds the summary file.
    """

    figure_id = ""
    title = ""

    def __init__(self, output_dir: str = None, workers: int = 1, sweep_points: int = None):
        self.output_dir = ensure_output_directory(output_dir)
        self.workers = workers
        self.sweep_points = sweep_points
        self.K = PRESET_K
        self.D = PRESET_D
        self.bundle = FigureBundle(figure_id=self.figure_id)

    @abstractmethod
    def build(self):
        """Emit the datasets of this figure."""

    def run(self) -> FigureBundle:
        logger.info(f"Reproducing {self.figure_id}: {self.title}")
        print(f"🎨 Reproducing {self.figure_id}: {self.title}")
        self.bundle.summary.update({"figure": self.figure_id, "title": self.title, "K": self.K, "D": self.D})
        self.build()
        summary_path = os.path.join(self.output_dir, f"{self.figure_id}_summary.json")
        self.bundle.files.append(write_json(summary_path, self.bundle.summary))
        print(f"✅ {self.figure_id}: {len(self.bundle.files)} files written to {self.output_dir}")
        return self.bundle

    # ------------------------------------------------------------------
    def path(self, name: str) -> str:
        return os.path.join(self.output_dir, f"{self.figure_id}_{name}.csv")

    def write_table(self, name: str, header: Sequence[str], rows: Iterable[Sequence[Any]]):
        self.bundle.files.append(write_rows(self.path(name), header, rows))

    def write_hopf(self, name: str, points: List[HopfPoint], kernel: BaseKernel):
        self.bundle.files.append(emit_hopf_csv(self.path(name), points, kernel, self.K, self.D))

    def params(self, r: float) -> ModelParams:
        return ModelParams(r=r, K=self.K, D=self.D)

    def hopf_summary(self, r: float, kernel: BaseKernel) -> List[Dict[str, Any]]:
        """Hopf delays at growth rate r, for the summary file."""
        return [{"omega": point.omega, "tau_m": point.tau_m, "crossing": point.crossing.value}
                for point in hopf_points_at(self.params(r), kernel)]

    def sweep(self, name: str, r: float, kernel: BaseKernel, tau_range, n_points: int) -> BifurcationSweep:
        """
        Bifurcation sweep written as <figure>_<name>.csv; detected transitions go to the summary.
        The grid is densified around the analytic Hopf delays at r.
        """
        n_points = self.sweep_points or n_points
        params = self.params(r)
        config = SimConfig(step_per_delay=SWEEP_STEP_PER_DELAY,
                           history_value=SWEEP_HISTORY_FRACTION * equilibrium(params))
        hopf_delays = [point.tau_m for point in hopf_points_at(params, kernel)]
        result = bifurcation_sweep(params, kernel, tau_range, n_points, config, self.workers,
                                   refine_near=hopf_delays)
        self.write_table(name, BIFURCATION_COLUMNS,
                         ((row.tau_m, row.n_min, row.n_max, row.oscillating) for row in result.rows))
        self.bundle.summary.setdefault("sweeps", {})[name] = {
            "r": r,
            "tau_range": list(tau_range),
            "hopf_delays": hopf_delays,
            "onset": result.onset,
            "window": list(result.window) if result.window else None,
            "failures": len(result.failures),
        }
        return result

    def trajectories(self, r: float, kernel: BaseKernel, delays: Sequence[float], label: str):
        """Time series and phase portraits at the given delays, with the analytic verdicts."""
        params = self.params(r)
        verdicts = {}
        for tau in delays:
            trajectory = simulate(params, kernel, tau, SimConfig())
            every = max(1, len(trajectory) // MAX_SERIES_ROWS)
            stem = f"{label}_tau_{tau:g}"
            self.write_table(f"trajectory_{stem}", TRAJECTORY_COLUMNS,
                             zip(trajectory.times[::every].tolist(), trajectory.values[::every].tolist(),
                                 trajectory.delayed[::every].tolist()))
            portrait = phase_portrait(trajectory)
            self.write_table(f"phase_{stem}", PHASE_COLUMNS,
                             zip(portrait.n[::every].tolist(), portrait.delayed[::every].tolist()))
            verdict = classify(params, kernel, tau)
            verdicts[f"{tau:g}"] = {
                "verdict": verdict.state.value,
                "closed_loop": portrait.closed_loop,
                "amplitude": portrait.amplitude,
            }
        self.bundle.summary.setdefault("trajectories", {})[label] = {
            "r": r, "n_star": equilibrium(params), "runs": verdicts,
        }

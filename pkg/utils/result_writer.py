"""
CSV and JSON emission of analysis and simulation results.

All floats are written with 12 significant digits, CSV files always carry a
header row and use LF line endings, and nothing time-dependent is written, so
identical inputs give byte-identical files.
"""
import csv
import json
import logging
import math
import os
from typing import Any, Dict, Iterable, List, Sequence

from model import BaseKernel, ModelParams
from simulation import BifurcationSweep, PhasePortrait, Trajectory
from stability import HopfCurve, HopfPoint, characteristic_residual
from stability.hopf_curve import RESIDUAL_TOLERANCE

from .errors import NumericalError, OutputError
from .file_utils import ensure_output_directory

logger = logging.getLogger(__name__)

HOPF_COLUMNS = ("omega", "r", "tau_m", "crossing")
BIFURCATION_COLUMNS = ("tau_m", "n_min", "n_max", "oscillating")
TRAJECTORY_COLUMNS = ("t", "n", "delayed")
PHASE_COLUMNS = ("n", "delayed")


def format_value(value: Any) -> str:
    """Text form of one CSV cell."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, float)):
        if isinstance(value, float) and math.isnan(value):
            return "nan"
        return f"{float(value):.12g}" if isinstance(value, float) else str(value)
    if hasattr(value, "value"):
        return str(value.value)
    return str(value)


def _json_ready(value: Any) -> Any:
    """Round floats to 12 significant digits recursively; NaN/inf become null."""
    if isinstance(value, bool) or value is None or isinstance(value, (str, int)):
        return value
    if isinstance(value, float):
        return float(f"{value:.12g}") if math.isfinite(value) else None
    if isinstance(value, dict):
        return {str(key): _json_ready(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_ready(item) for item in value]
    if hasattr(value, "value"):
        return value.value
    if hasattr(value, "item"):
        return _json_ready(value.item())
    return str(value)


def write_rows(path: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """
    Write a CSV file with a header row.

    Raises:
        OutputError: If the file cannot be written
    """
    try:
        with open(path, 'w', newline='', encoding='utf-8') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(header)
            for row in rows:
                writer.writerow([format_value(cell) for cell in row])
    except OSError as e:
        raise OutputError(f"Cannot write {path}: {e}") from e
    logger.debug(f"Wrote {path}")
    return path


def write_json(path: str, summary: Dict[str, Any]) -> str:
    """
    Write a JSON summary with sorted keys.

    Raises:
        OutputError: If the file cannot be written
    """
    try:
        with open(path, 'w', newline='\n', encoding='utf-8') as f:
            json.dump(_json_ready(summary), f, indent=2, sort_keys=True)
            f.write("\n")
    except OSError as e:
        raise OutputError(f"Cannot write {path}: {e}") from e
    logger.debug(f"Wrote {path}")
    return path


def validated_hopf_rows(points: List[HopfPoint], kernel: BaseKernel, K: float, D: float) -> List[tuple]:
    """
    Re-check |Delta(i omega)| for every Hopf point before it is written.

    Raises:
        NumericalError: If a point no longer satisfies the characteristic equation
    """
    rows = []
    for point in points:
        residual = characteristic_residual(kernel, ModelParams(r=point.r, K=K, D=D), point.omega, point.tau_m)
        if residual > RESIDUAL_TOLERANCE:
            raise NumericalError(f"Hopf row omega={point.omega} fails re-validation: |Delta|={residual:.3e}")
        rows.append((point.omega, point.r, point.tau_m, point.crossing.value))
    return rows


def emit_hopf_csv(path: str, points: List[HopfPoint], kernel: BaseKernel, K: float, D: float) -> str:
    return write_rows(path, HOPF_COLUMNS, validated_hopf_rows(points, kernel, K, D))


def emit_bifurcation_csv(path: str, sweep: BifurcationSweep) -> str:
    return write_rows(path, BIFURCATION_COLUMNS,
                      ((row.tau_m, row.n_min, row.n_max, row.oscillating) for row in sweep.rows))


def emit_trajectory_csv(path: str, trajectory: Trajectory, every: int = 1) -> str:
    every = max(1, int(every))
    return write_rows(path, TRAJECTORY_COLUMNS,
                      zip(trajectory.times[::every].tolist(), trajectory.values[::every].tolist(),
                          trajectory.delayed[::every].tolist()))


def emit_phase_csv(path: str, portrait: PhasePortrait, every: int = 1) -> str:
    every = max(1, int(every))
    return write_rows(path, PHASE_COLUMNS, zip(portrait.n[::every].tolist(), portrait.delayed[::every].tolist()))


def emit_csv(result: Any, stem: str, output_dir: str = None, every: int = 1, **context) -> List[str]:
    """
    Write a result to CSV inside the output directory.

    Args:
        result: HopfCurve, list of HopfPoint, BifurcationSweep, Trajectory or PhasePortrait
        stem: File name without extension
        output_dir: Target directory (default from the environment)
        every: Keep every n-th sample of time series
        context: kernel, K and D for a bare list of Hopf points

    Returns:
        list: Paths written

    Raises:
        OutputError: On an unwritable output directory
        NumericalError: If a Hopf row fails re-validation
    """
    directory = ensure_output_directory(output_dir)
    path = os.path.join(directory, f"{stem}.csv")
    if isinstance(result, HopfCurve):
        return [emit_hopf_csv(path, result.points, result.kernel, result.K, result.D)]
    if isinstance(result, list) and all(isinstance(item, HopfPoint) for item in result):
        return [emit_hopf_csv(path, result, context["kernel"], context["K"], context["D"])]
    if isinstance(result, BifurcationSweep):
        return [emit_bifurcation_csv(path, result)]
    if isinstance(result, Trajectory):
        return [emit_trajectory_csv(path, result, every)]
    if isinstance(result, PhasePortrait):
        return [emit_phase_csv(path, result, every)]
    raise TypeError(f"No CSV layout for {type(result).__name__}")


def emit_summary(summary: Dict[str, Any], stem: str, output_dir: str = None) -> str:
    """Write the machine-readable JSON summary next to the CSV files."""
    directory = ensure_output_directory(output_dir)
    return write_json(os.path.join(directory, f"{stem}.json"), summary)

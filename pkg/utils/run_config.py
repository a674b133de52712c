"""
Run configuration for the command-line front end.
Precedence: built-in defaults < JSON config file < command-line flags.
"""
import argparse
import math
import os
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

from dotenv import load_dotenv

from model import BaseKernel, ModelParams, parse_kernel
from simulation import SimConfig
from stability import OMEGA_MAX

from .errors import ConfigError
from .text_reader import text_reader

load_dotenv()

COMMANDS = (
    "equilibrium", "transforms", "hopf", "region", "classify",
    "simulate", "bifurcation", "phase", "reproduce-figure",
)
FIGURES = ("fig1", "fig3", "fig4", "fig5", "fig6", "fig7")

DEFAULTS: Dict[str, Any] = {
    "command": None,
    "kernel": "dirac",
    "r": 2.0,
    "K": 5.0,
    "D": 0.0,
    "tau": None,
    "tau_min": None,
    "tau_max": None,
    "r_min": 0.1,
    "r_max": 10.0,
    "n_points": 41,
    "t_end": None,
    "step": None,
    "history": None,
    "omega_max": OMEGA_MAX,
    "output": None,
    "figure": None,
    "workers": None,
}

FLOAT_FIELDS = ("r", "K", "D", "tau", "tau_min", "tau_max", "r_min", "r_max",
                "t_end", "step", "history", "omega_max")
INT_FIELDS = ("n_points", "workers")

# Commands needing a single mean delay, and those needing a delay range
NEEDS_TAU = ("classify", "simulate", "phase")
NEEDS_TAU_RANGE = ("bifurcation",)


class ConfigArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises ConfigError instead of exiting."""

    def error(self, message):
        raise ConfigError(message)


@dataclass(frozen=True)
class RunConfig:
    """Validated settings of one CLI invocation."""

    command: str
    kernel: BaseKernel
    params: ModelParams
    tau: Optional[float] = None
    tau_min: Optional[float] = None
    tau_max: Optional[float] = None
    r_min: float = DEFAULTS["r_min"]
    r_max: float = DEFAULTS["r_max"]
    n_points: int = DEFAULTS["n_points"]
    t_end: Optional[float] = None
    step: Optional[float] = None
    history: Optional[float] = None
    omega_max: float = OMEGA_MAX
    output: Optional[str] = None
    figure: Optional[str] = None
    workers: int = 1

    @property
    def sim_config(self) -> SimConfig:
        return SimConfig(step=self.step, t_end=self.t_end, history_value=self.history)

    def to_dict(self) -> Dict[str, Any]:
        """Config-file form of this run (field names match the long flags)."""
        return {
            "command": self.command,
            "kernel": self.kernel.describe(),
            "r": self.params.r,
            "K": self.params.K,
            "D": self.params.D,
            "tau": self.tau,
            "tau_min": self.tau_min,
            "tau_max": self.tau_max,
            "r_min": self.r_min,
            "r_max": self.r_max,
            "n_points": self.n_points,
            "t_end": self.t_end,
            "step": self.step,
            "history": self.history,
            "omega_max": self.omega_max,
            "output": self.output,
            "figure": self.figure,
            "workers": self.workers,
        }


def build_parser() -> argparse.ArgumentParser:
    parser = ConfigArgumentParser(
        prog="delay_logistic",
        description="Stability analysis and simulation of the logistic model with distributed delay and inflow",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python delay_logistic.py hopf --kernel gamma:p=2 --K 5 --D 3
  python delay_logistic.py classify --kernel gamma:p=2 --r 5 --K 5 --D 3 --tau 5
  python delay_logistic.py bifurcation --kernel uniform:sigma=1 --r 2 --K 5 --D 3 --tau-min 0.5 --tau-max 1.2
  python delay_logistic.py reproduce-figure --figure fig6
        """
    )
    parser.add_argument("command", nargs="?", default=None, choices=COMMANDS, help="Operation to run")
    parser.add_argument("--config", default=None, help="JSON file with the same field names as the long flags")
    parser.add_argument("--kernel", default=None, help="dirac | uniform:sigma=S | gamma:p=P")
    parser.add_argument("--r", type=float, default=None, help="Growth rate")
    parser.add_argument("--K", type=float, default=None, help="Carrying capacity")
    parser.add_argument("--D", type=float, default=None, help="Constant inflow rate")
    parser.add_argument("--tau", type=float, default=None, help="Mean delay")
    parser.add_argument("--tau-min", dest="tau_min", type=float, default=None, help="Sweep start")
    parser.add_argument("--tau-max", dest="tau_max", type=float, default=None, help="Sweep end")
    parser.add_argument("--r-min", dest="r_min", type=float, default=None, help="Smallest r of a region scan")
    parser.add_argument("--r-max", dest="r_max", type=float, default=None, help="Largest r of a region/curve scan")
    parser.add_argument("--n-points", dest="n_points", type=int, default=None, help="Points per sweep")
    parser.add_argument("--t-end", dest="t_end", type=float, default=None, help="Integration horizon")
    parser.add_argument("--step", type=float, default=None, help="Integration step")
    parser.add_argument("--history", type=float, default=None, help="Constant initial history n0")
    parser.add_argument("--omega-max", dest="omega_max", type=float, default=None, help="Upper frequency of root scans")
    parser.add_argument("--output", "-o", default=None, help="Output directory (default: $DELAY_LOGISTIC_OUTPUT_DIR or ./output)")
    parser.add_argument("--figure", default=None, choices=FIGURES, help="Figure preset for reproduce-figure")
    parser.add_argument("--workers", "-j", type=int, default=None, help="Processes for sweeps")
    return parser


def _check_type(name: str, value: Any) -> Any:
    if value is None:
        return None
    if name in FLOAT_FIELDS:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{name}: expected a number, got {value!r}")
        value = float(value)
        if not math.isfinite(value):
            raise ConfigError(f"{name}: must be finite, got {value}")
        return value
    if name in INT_FIELDS:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{name}: expected an integer, got {value!r}")
        return value
    if not isinstance(value, str):
        raise ConfigError(f"{name}: expected a string, got {value!r}")
    return value


def load_config_file(path: str) -> Dict[str, Any]:
    """
    Read a JSON config file and check its keys and value types.

    Raises:
        ConfigError: On a missing file, invalid JSON, an unknown key or a mistyped value
    """
    data = text_reader.read_json(path)
    unknown = sorted(set(data) - set(DEFAULTS))
    if unknown:
        raise ConfigError(f"{unknown[0]}: unknown config key in {path}")
    return {name: _check_type(name, value) for name, value in data.items()}


def _require(condition: bool, field_name: str, message: str):
    if not condition:
        raise ConfigError(f"{field_name}: {message}")


def validate(values: Dict[str, Any]) -> RunConfig:
    """
    Turn merged raw values into a RunConfig.

    Raises:
        ConfigError: Naming the first offending field
    """
    command = values["command"]
    _require(command is not None, "command", "no command given")
    _require(command in COMMANDS, "command", f"unknown command {command!r}")

    try:
        kernel = parse_kernel(values["kernel"])
    except ValueError as e:
        raise ConfigError(str(e)) from e
    try:
        params = ModelParams(r=values["r"], K=values["K"], D=values["D"])
    except ValueError as e:
        raise ConfigError(str(e)) from e

    tau = values["tau"]
    if tau is not None:
        _require(tau >= 0, "tau", f"must be >= 0, got {tau}")
    if command in NEEDS_TAU:
        _require(tau is not None, "tau", f"required by {command}")

    tau_min, tau_max = values["tau_min"], values["tau_max"]
    if command in NEEDS_TAU_RANGE:
        _require(tau_min is not None and tau_max is not None, "tau_min", f"tau_min and tau_max required by {command}")
    if tau_min is not None or tau_max is not None:
        _require(tau_min is not None and tau_max is not None, "tau_max", "tau_min and tau_max must be given together")
        _require(0 < tau_min < tau_max, "tau_min", f"need 0 < tau_min < tau_max, got ({tau_min}, {tau_max})")

    _require(0 < values["r_min"] < values["r_max"], "r_min",
             f"need 0 < r_min < r_max, got ({values['r_min']}, {values['r_max']})")
    _require(values["n_points"] >= 2, "n_points", f"must be >= 2, got {values['n_points']}")
    for name in ("t_end", "step", "history"):
        if values[name] is not None:
            _require(values[name] > 0, name, f"must be > 0, got {values[name]}")
    _require(values["omega_max"] > 0, "omega_max", f"must be > 0, got {values['omega_max']}")

    workers = values["workers"]
    if workers is None:
        env_workers = os.getenv("DELAY_LOGISTIC_WORKERS", "1")
        _require(env_workers.isdigit(), "workers", f"DELAY_LOGISTIC_WORKERS must be an integer, got {env_workers!r}")
        workers = int(env_workers)
    _require(workers >= 1, "workers", f"must be >= 1, got {workers}")

    figure = values["figure"]
    if command == "reproduce-figure":
        _require(figure is not None, "figure", "required by reproduce-figure")
    if figure is not None:
        _require(figure in FIGURES, "figure", f"unknown figure {figure!r}, expected one of {', '.join(FIGURES)}")

    return RunConfig(
        command=command, kernel=kernel, params=params, tau=tau,
        tau_min=tau_min, tau_max=tau_max, r_min=values["r_min"], r_max=values["r_max"],
        n_points=values["n_points"], t_end=values["t_end"], step=values["step"],
        history=values["history"], omega_max=values["omega_max"], output=values["output"],
        figure=figure, workers=workers,
    )


def parse_config(argv: List[str] = None) -> RunConfig:
    """
    Parse command-line arguments and an optional JSON config file.

    Args:
        argv: Arguments without the program name (defaults to sys.argv[1:])

    Returns:
        RunConfig: Validated configuration

    Raises:
        ConfigError: On any invalid flag, key or value
    """
    args = build_parser().parse_args(argv)
    values = dict(DEFAULTS)
    if args.config:
        values.update(load_config_file(args.config))
    for name in DEFAULTS:
        flag_value = getattr(args, name)
        if flag_value is not None:
            values[name] = _check_type(name, flag_value)
    return validate(values)

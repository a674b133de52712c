"""
Command-line entry point for the delay logistic toolkit.

Subcommands: equilibrium, transforms, hopf, region, classify, simulate,
bifurcation, phase, reproduce-figure. Exit codes: 0 success, 2 config error,
3 output error, 4 numerical failure.
"""
import functools
import logging
import os
import sys
import traceback

import numpy as np
from dotenv import load_dotenv

from figures import reproduce_figure
from model import GammaKernel, equilibrium, equilibrium_residual, transforms
from simulation import bifurcation_sweep, phase_portrait, simulate
from stability import (
    classify, crossing_frequencies_d0, gamma_thresholds, hopf_curve_dpos, hopf_delay_d0,
    hopf_points_at, stability_region
)
from utils import ConfigError, NumericalError, OutputError, setup_logging
from utils.result_writer import emit_csv, emit_summary, validated_hopf_rows, write_rows
from utils.file_utils import ensure_output_directory
from utils.run_config import RunConfig, parse_config

load_dotenv()

logger = logging.getLogger("delay_logistic")

MAX_SERIES_ROWS = 20000


def exit_code_handler(func):
    """
    Map exceptions raised anywhere below main() to process exit codes.

    ConfigError and plain ValueError exit with 2, OutputError with 3,
    NumericalError with 4; anything else is logged with its traceback and exits with 1.
    """
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (ConfigError, OutputError, NumericalError) as e:
            logger.error(f"{type(e).__name__}: {e}")
            print(f"❌ {e}")
            sys.exit(e.exit_code)
        except ValueError as e:
            logger.error(f"Invalid value: {e}")
            print(f"❌ {e}")
            sys.exit(ConfigError.exit_code)
        except Exception as e:
            logger.critical(f"CRITICAL EXCEPTION OCCURRED in {func.__name__}: {e}")
            logger.critical(f"Exception Type: {type(e).__name__}")
            logger.critical(traceback.format_exc())
            print(f"❌ Unexpected error: {e}")
            sys.exit(1)
    return wrapper


def stem(config: RunConfig) -> str:
    """Deterministic file stem: command and kernel."""
    kernel = config.kernel.describe().replace(":", "_").replace("=", "_")
    return f"{config.command.replace('-', '_')}_{kernel}"


def base_summary(config: RunConfig) -> dict:
    params = config.params
    return {
        "command": config.command,
        "kernel": config.kernel.describe(),
        "r": params.r,
        "K": params.K,
        "D": params.D,
        "n_star": equilibrium(params),
    }


def run_equilibrium(config: RunConfig) -> dict:
    summary = base_summary(config)
    summary["residual"] = equilibrium_residual(config.params)
    print(f"📊 n* = {summary['n_star']:.12g} (relative residual {summary['residual']:.2e})")
    return summary


def run_transforms(config: RunConfig) -> dict:
    summary = base_summary(config)
    ts = transforms(config.kernel)
    omegas = np.linspace(0.0, config.omega_max, config.n_points)
    rows = zip(omegas.tolist(), ts.C(omegas).tolist(), ts.S(omegas).tolist(),
               ts.C_prime(omegas).tolist(), ts.S_prime(omegas).tolist())
    directory = ensure_output_directory(config.output)
    write_rows(os.path.join(directory, f"{stem(config)}.csv"), ("omega", "C", "S", "C_prime", "S_prime"), rows)
    crossings = crossing_frequencies_d0(config.kernel, config.omega_max)
    summary["omega0"] = crossings.omega0
    summary["d0_roots"] = [root.omega for root in crossings.roots]
    print(f"📈 Transforms on [0, {config.omega_max:g}] written; first crossing frequency omega0 = {crossings.omega0}")
    return summary


def run_hopf(config: RunConfig) -> dict:
    summary = base_summary(config)
    kernel, params = config.kernel, config.params
    if params.D > 0:
        curve = hopf_curve_dpos(kernel, params.K, params.D, config.omega_max)
        emit_csv(curve, stem(config), config.output)
        summary["curve_points"] = len(curve.points)
        summary["asymptote_r"] = curve.asymptote_r()
        if isinstance(kernel, GammaKernel):
            thresholds = gamma_thresholds(params.K, params.D)
            summary["thresholds"] = {"r_star": thresholds.r_star, "r_lower": thresholds.r_lower,
                                     "r_upper": thresholds.r_upper}
        print(f"📈 Hopf curve: {len(curve.points)} points, asymptotes at r = {summary['asymptote_r']}")
    else:
        r_values = np.linspace(config.r_min, config.r_max, config.n_points)
        points = [point for _, row in stability_region(kernel, params.K, 0.0, r_values, config.omega_max)
                  for point in row]
        emit_csv(points, stem(config), config.output, kernel=kernel, K=params.K, D=0.0)
        summary["tau_star_at_r"] = hopf_delay_d0(kernel, params.r, config.omega_max)
        print(f"📈 Hopf points for D=0 over r in [{config.r_min:g}, {config.r_max:g}]: {len(points)}; "
              f"tau* at r={params.r:g}: {summary['tau_star_at_r']}")
    summary["hopf_at_r"] = [{"omega": p.omega, "tau_m": p.tau_m, "crossing": p.crossing.value}
                            for p in hopf_points_at(params, kernel, config.omega_max)]
    return summary


def run_region(config: RunConfig) -> dict:
    summary = base_summary(config)
    params = config.params
    r_values = np.linspace(config.r_min, config.r_max, config.n_points)
    rows = []
    intervals = {}
    for r, points in stability_region(config.kernel, params.K, params.D, r_values, config.omega_max):
        for index, row in enumerate(validated_hopf_rows(points, config.kernel, params.K, params.D)):
            omega, _, tau_m, crossing = row
            rows.append((r, index, omega, tau_m, crossing))
        intervals[f"{r:.12g}"] = [p.tau_m for p in points]
    directory = ensure_output_directory(config.output)
    write_rows(os.path.join(directory, f"{stem(config)}.csv"), ("r", "index", "omega", "tau_m", "crossing"), rows)
    summary["hopf_delays"] = intervals
    print(f"🗺️ Stability region: {len(r_values)} growth rates, {len(rows)} Hopf points")
    return summary


def run_classify(config: RunConfig) -> dict:
    summary = base_summary(config)
    verdict = classify(config.params, config.kernel, config.tau, config.omega_max)
    summary.update({
        "tau_m": config.tau,
        "verdict": verdict.state.value,
        "margin": verdict.margin,
        "marginal": verdict.marginal,
        "unstable_pairs": verdict.unstable_pairs,
        "hopf_delays": [p.tau_m for p in verdict.hopf_points],
    })
    marker = "✅" if verdict.is_stable else "⚠️"
    print(f"{marker} n* = {summary['n_star']:.6g} is {verdict.state.value} at tau_m = {config.tau:g}"
          + (" (marginal)" if verdict.marginal else ""))
    return summary


def run_simulate(config: RunConfig) -> dict:
    summary = base_summary(config)
    trajectory = simulate(config.params, config.kernel, config.tau, config.sim_config)
    every = max(1, len(trajectory) // MAX_SERIES_ROWS)
    emit_csv(trajectory, stem(config), config.output, every=every)
    n_min, n_max = trajectory.extrema()
    summary.update({"tau_m": config.tau, "n_min": n_min, "n_max": n_max, "step": trajectory.config.step,
                    "t_end": trajectory.config.t_end})
    print(f"📈 Simulated to t = {trajectory.config.t_end:g}: n in [{n_min:.6g}, {n_max:.6g}] after transient")
    return summary


def run_bifurcation(config: RunConfig) -> dict:
    summary = base_summary(config)
    sweep = bifurcation_sweep(config.params, config.kernel, (config.tau_min, config.tau_max),
                              config.n_points, config.sim_config, config.workers)
    emit_csv(sweep, stem(config), config.output)
    summary.update({
        "onset": sweep.onset,
        "window": list(sweep.window) if sweep.window else None,
        "transitions": [list(change) for change in sweep.transitions],
        "failures": [{"tau_m": row.tau_m, "error": row.error} for row in sweep.failures],
        "hopf_delays": [p.tau_m for p in hopf_points_at(config.params, config.kernel, config.omega_max)],
    })
    print(f"📊 Bifurcation sweep: {len(sweep.rows)} rows, detected onset {sweep.onset}")
    return summary


def run_phase(config: RunConfig) -> dict:
    summary = base_summary(config)
    trajectory = simulate(config.params, config.kernel, config.tau, config.sim_config)
    portrait = phase_portrait(trajectory)
    every = max(1, len(portrait.n) // MAX_SERIES_ROWS)
    emit_csv(portrait, stem(config), config.output, every=every)
    summary.update({"tau_m": config.tau, "closed_loop": portrait.closed_loop, "amplitude": portrait.amplitude,
                    "center": list(portrait.center)})
    print(f"🔁 Phase portrait: {'limit cycle' if portrait.closed_loop else 'no closed loop'}, "
          f"amplitude {portrait.amplitude:.4g}")
    return summary


COMMAND_HANDLERS = {
    "equilibrium": run_equilibrium,
    "transforms": run_transforms,
    "hopf": run_hopf,
    "region": run_region,
    "classify": run_classify,
    "simulate": run_simulate,
    "bifurcation": run_bifurcation,
    "phase": run_phase,
}


@exit_code_handler
def main(argv=None):
    """Parse the configuration, dispatch the command and write the results."""
    setup_logging()
    config = parse_config(argv)
    logger.info(f"Running {config.command} with {config.to_dict()}")

    if config.command == "reproduce-figure":
        bundle = reproduce_figure(config.figure, config.output, config.workers)
        logger.info(f"{config.figure}: wrote {len(bundle.files)} files")
        return 0

    summary = COMMAND_HANDLERS[config.command](config)
    path = emit_summary(summary, stem(config), config.output)
    print(f"💾 Summary written to {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

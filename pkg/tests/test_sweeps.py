"""
Bifurcation sweeps, amplitude extrapolation and phase portraits.
"""
import math

import numpy as np
import pytest

import simulation.sweeps as sweeps
from model import DiracKernel, GammaKernel, ModelParams, equilibrium
from simulation import (
    BifurcationRow, BifurcationSweep, SimConfig, amplitude_settled, asymptotic_amplitude, bifurcation_row,
    bifurcation_sweep, phase_portrait, refined_delays, settled_run, simulate_dirac, sweep_delays,
    window_amplitudes
)
from stability import hopf_points_at

HUTCHINSON = ModelParams(r=2.0, K=5.0)
FIG_PARAMS = ModelParams(r=5.0, K=5.0, D=3.0)


def row(tau_m, oscillating, error=None):
    if error:
        return BifurcationRow(tau_m=tau_m, n_min=math.nan, n_max=math.nan, oscillating=False, error=error)
    return BifurcationRow(tau_m=tau_m, n_min=4.0, n_max=6.0 if oscillating else 4.0, oscillating=oscillating)


def test_asymptotic_amplitude():
    assert asymptotic_amplitude([1.0, 0.5, 0.25]) == pytest.approx(0.0, abs=1e-12)
    assert asymptotic_amplitude([1.0, 1.5, 1.75]) == pytest.approx(2.0)
    # Linear trend is not geometric: keep the last window
    assert asymptotic_amplitude([1.0, 2.0, 3.0]) == 3.0
    assert asymptotic_amplitude([1.0, 2.0, 1.5]) == 1.5


@pytest.mark.parametrize("amplitudes, settled", [
    ([1.0, 1.0, 1.0], True),
    ([1.0, 1.0, 1.05], True),
    ([1.0, 1.0, 1e-5], True),
    # Slow geometric decay is still trending
    ([1.0, 0.95, 0.9025], False),
    ([1.0, 0.99, 0.9801], False),
    ([1.0, 1.0, 1.5], False),
])
def test_amplitude_settled(amplitudes, settled):
    assert amplitude_settled(amplitudes, tolerance=1e-3) is settled


def test_slow_decay_is_extrapolated_not_settled(monkeypatch):
    horizons = []

    def decaying(trajectory, count=3):
        horizons.append(trajectory.config.t_end)
        return [0.5 * 0.95 ** k for k in range(count)]

    monkeypatch.setattr(sweeps, "window_amplitudes", decaying)
    config = SimConfig(step=0.01, t_end=10.0, max_doublings=2)
    _, amplitude = settled_run(ModelParams(r=2.0, K=5.0, D=3.0), DiracKernel(), 0.5, config)
    assert horizons == [10.0, 20.0, 40.0]
    assert amplitude == pytest.approx(0.0, abs=1e-9)


def test_sweep_transitions_skip_failed_rows():
    sweep = BifurcationSweep(kernel="gamma_p_2", params=FIG_PARAMS, rows=[
        row(1.0, False), row(2.0, True), row(3.0, False, error="boom"), row(4.0, True), row(5.0, False),
    ])
    assert sweep.transitions == [(1.5, True), (4.5, False)]
    assert sweep.onset == 1.5
    assert sweep.window == (1.5, 4.5)
    assert [r.tau_m for r in sweep.failures] == [3.0]


def test_sweep_without_window():
    rising = BifurcationSweep(kernel="dirac", params=HUTCHINSON, rows=[row(1.0, False), row(2.0, True), row(3.0, True)])
    assert rising.onset == 1.5
    assert rising.window is None
    flat = BifurcationSweep(kernel="dirac", params=HUTCHINSON, rows=[row(1.0, False), row(2.0, False)])
    assert flat.onset is None
    assert flat.transitions == []


def test_row_amplitude():
    assert row(1.0, True).amplitude == 2.0


@pytest.mark.parametrize("args", [(0.0, 1.0, 5), (2.0, 1.0, 5), (0.5, math.inf, 5), (0.5, 1.0, 1)])
def test_sweep_delays_validation(args):
    with pytest.raises(ValueError):
        sweep_delays(*args)


def test_sweep_delays():
    np.testing.assert_allclose(sweep_delays(0.5, 1.0, 3), [0.5, 0.75, 1.0])


def test_refined_delays():
    delays = refined_delays(1.0, 3.0, 3, centers=[2.0], half_width=0.1, step=0.05)
    np.testing.assert_allclose(delays, [1.0, 1.925, 1.975, 2.0, 2.025, 2.075, 3.0])
    # Centers outside the range are ignored; sub-grids are clipped to it
    np.testing.assert_allclose(refined_delays(1.0, 3.0, 3, centers=[5.0]), [1.0, 2.0, 3.0])
    near_edge = refined_delays(1.0, 3.0, 3, centers=[1.0], half_width=0.1, step=0.05)
    np.testing.assert_allclose(near_edge, [1.0, 1.025, 1.075, 2.0, 3.0])
    with pytest.raises(ValueError):
        refined_delays(1.0, 3.0, 3, centers=[2.0], step=0.0)


def test_failed_row_is_recorded():
    failed = bifurcation_row(FIG_PARAMS, DiracKernel(), 1.0, SimConfig(step=0.1))
    assert failed.error
    assert math.isnan(failed.n_min) and math.isnan(failed.n_max)
    assert not failed.oscillating


def test_window_amplitudes():
    trajectory = simulate_dirac(HUTCHINSON, 1.0, SimConfig(step=0.01, t_end=100.0))
    amplitudes = window_amplitudes(trajectory)
    assert len(amplitudes) == 3
    assert all(a > 0 for a in amplitudes)


def test_small_stable_sweep(monkeypatch):
    monkeypatch.setenv("DELAY_LOGISTIC_WORKERS", "1")
    sweep = bifurcation_sweep(HUTCHINSON, DiracKernel(), (0.3, 0.5), 2, SimConfig(step_per_delay=0.02))
    assert [r.tau_m for r in sweep.rows] == pytest.approx([0.3, 0.5])
    assert not any(r.oscillating for r in sweep.rows)
    for r in sweep.rows:
        assert r.n_min == pytest.approx(5.0, rel=1e-3)
        assert r.n_max == pytest.approx(5.0, rel=1e-3)
    assert sweep.onset is None


def test_stable_portrait_is_a_point():
    trajectory = simulate_dirac(ModelParams(r=2.0, K=5.0, D=3.0), 0.5, SimConfig(step=0.005, t_end=100.0))
    portrait = phase_portrait(trajectory)
    assert not portrait.closed_loop
    assert portrait.cycle_gap is None
    n_star = equilibrium(trajectory.params)
    assert portrait.center[0] == pytest.approx(n_star, rel=1e-4)
    assert portrait.center[1] == pytest.approx(n_star, rel=1e-4)


def test_limit_cycle_portrait_is_closed():
    trajectory = simulate_dirac(HUTCHINSON, 1.0, SimConfig(step=0.01, t_end=400.0))
    portrait = phase_portrait(trajectory)
    assert portrait.closed_loop
    assert portrait.cycle_gap < 0.05 * portrait.amplitude
    assert len(portrait.n) == len(portrait.delayed)
    # Over whole cycles the delayed channel averages to K
    assert portrait.center[1] == pytest.approx(5.0, rel=0.1)


def test_portrait_amplitude_grows_with_delay():
    config = SimConfig(step=0.01, t_end=200.0)
    amplitudes = [phase_portrait(simulate_dirac(HUTCHINSON, tau, config)).amplitude for tau in (0.85, 0.95, 1.05)]
    assert amplitudes[0] > 0.1
    assert amplitudes[0] < amplitudes[1] < amplitudes[2]


def test_portrait_needs_samples():
    trajectory = simulate_dirac(HUTCHINSON, 0.5, SimConfig(step=0.01, t_end=10.0))
    with pytest.raises(ValueError):
        phase_portrait(trajectory, transient=20.0)


@pytest.mark.slow
def test_dirac_sweep_finds_onset():
    sweep = bifurcation_sweep(HUTCHINSON, DiracKernel(), (0.6, 1.0), 9, SimConfig(step_per_delay=0.01), workers=1)
    assert not sweep.failures
    assert sweep.onset == pytest.approx(math.pi / 4, abs=0.03)
    assert len(sweep.transitions) == 1


@pytest.mark.slow
def test_strong_gamma_sweep_finds_stability_window():
    hopf_delays = [point.tau_m for point in hopf_points_at(FIG_PARAMS, GammaKernel(2))]
    config = SimConfig(step_per_delay=0.01, history_value=0.99 * equilibrium(FIG_PARAMS))
    sweep = bifurcation_sweep(FIG_PARAMS, GammaKernel(2), (0.5, 12.5), 5, config, workers=1,
                              refine_near=hopf_delays)
    assert not sweep.failures
    assert sweep.window == pytest.approx((1.341, 10.177), abs=0.05)

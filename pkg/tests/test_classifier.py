"""
Stability verdicts from crossing counts, cross-checked against the gamma eigenvalue oracle.
"""
import numpy as np
import pytest

from model import DiracKernel, GammaKernel, ModelParams, UniformKernel
from stability import (
    Crossing, HopfPoint, StabilityState, classify, count_unstable_pairs, gamma_eigen_oracle, hopf_points_at
)

FIG_PARAMS = ModelParams(r=5.0, K=5.0, D=3.0)


@pytest.mark.parametrize("kernel", [DiracKernel(), UniformKernel(1.0), GammaKernel(1), GammaKernel(2)], ids=str)
@pytest.mark.parametrize("params", [ModelParams(r=2.0, K=5.0), FIG_PARAMS, ModelParams(r=0.4, K=1.0, D=10.0)])
def test_zero_delay_is_stable(kernel, params):
    verdict = classify(params, kernel, 0.0)
    assert verdict.state is StabilityState.STABLE
    assert verdict.is_stable


@pytest.mark.parametrize("tau_m", [0.5, 2.0, 10.0, 50.0])
def test_weak_gamma_kernel_always_stable(tau_m):
    verdict = classify(FIG_PARAMS, GammaKernel(1), tau_m)
    assert verdict.is_stable
    assert verdict.margin is None


@pytest.mark.parametrize("tau_m, state", [
    (0.5, StabilityState.STABLE),
    (5.0, StabilityState.UNSTABLE),
    (11.0, StabilityState.STABLE),
])
def test_strong_gamma_switching(tau_m, state):
    assert classify(FIG_PARAMS, GammaKernel(2), tau_m).state is state


def test_gamma_p3_single_onset():
    verdict = classify(ModelParams(r=4.0, K=5.0, D=3.0), GammaKernel(3), 1.0)
    assert verdict.state is StabilityState.UNSTABLE
    assert verdict.unstable_pairs == 1


def test_dirac_without_inflow():
    params = ModelParams(r=2.0, K=5.0)
    assert classify(params, DiracKernel(), 0.5).is_stable
    verdict = classify(params, DiracKernel(), 1.0)
    assert not verdict.is_stable
    assert verdict.margin == pytest.approx(1.0 - np.pi / 4, rel=1e-9)


def test_marginal_at_hopf_point():
    hopf = hopf_points_at(FIG_PARAMS, GammaKernel(2))
    verdict = classify(FIG_PARAMS, GammaKernel(2), hopf[0].tau_m, hopf_points=hopf)
    assert verdict.marginal
    assert verdict.state is StabilityState.UNSTABLE
    assert verdict.margin == 0.0


def test_negative_delay_rejected():
    with pytest.raises(ValueError):
        classify(FIG_PARAMS, DiracKernel(), -1.0)


def test_count_unstable_pairs():
    points = [
        HopfPoint(omega=2.6, r=5.0, tau_m=1.3, crossing=Crossing.LEFT_TO_RIGHT),
        HopfPoint(omega=5.1, r=5.0, tau_m=10.2, crossing=Crossing.RIGHT_TO_LEFT),
    ]
    assert count_unstable_pairs(points, 1.0) == 0
    assert count_unstable_pairs(points, 5.0) == 1
    assert count_unstable_pairs(points, 12.0) == 0
    assert count_unstable_pairs(points[1:], 12.0) == 0


@pytest.mark.parametrize("p", [1, 2, 3])
def test_classify_agrees_with_eigen_oracle(p):
    kernel = GammaKernel(p)
    checked = 0
    for r in np.linspace(0.3, 6.0, 20):
        params = ModelParams(r=float(r), K=5.0, D=3.0)
        hopf = hopf_points_at(params, kernel)
        for tau_m in np.linspace(0.2, 12.0, 20):
            tau_m = float(tau_m)
            if any(abs(tau_m - point.tau_m) < max(1e-2, 1e-2 * point.tau_m) for point in hopf):
                continue
            verdict = classify(params, kernel, tau_m, hopf_points=hopf)
            leading = gamma_eigen_oracle(params, p, tau_m)
            assert verdict.is_stable == (leading < 0), f"r={r}, tau_m={tau_m}, max Re={leading}"
            checked += 1
    assert checked > 300

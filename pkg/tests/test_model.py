"""
Model parameters, equilibrium and the characteristic function.
"""
import math

import pytest

from model import (
    DiracKernel, GammaKernel, ModelParams, UniformKernel, characteristic, equilibrium,
    equilibrium_residual, growth_rate_for_equilibrium, linear_coefficients, transforms
)
from utils.errors import NumericalError

KERNELS = [DiracKernel(), UniformKernel(1.0), GammaKernel(1), GammaKernel(2), GammaKernel(3)]


def test_equilibrium_without_inflow_is_capacity():
    for r in (0.1, 1.0, 7.5):
        assert equilibrium(ModelParams(r=r, K=5.0, D=0.0)) == 5.0


def test_equilibrium_values():
    assert equilibrium(ModelParams(r=5.0, K=5.0, D=3.0)) == pytest.approx(5.541381, abs=1e-6)
    assert equilibrium(ModelParams(r=2.0, K=5.0, D=3.0)) == pytest.approx(6.2081, abs=1e-4)


@pytest.mark.parametrize("r, K, D", [(5.0, 5.0, 3.0), (2.0, 5.0, 3.0), (0.01, 1.0, 100.0), (50.0, 3.0, 1e-8)])
def test_equilibrium_residual_and_bound(r, K, D):
    params = ModelParams(r=r, K=K, D=D)
    assert equilibrium_residual(params) <= 1e-12
    assert equilibrium(params) >= K


def test_n_star_property():
    params = ModelParams(r=5.0, K=5.0, D=3.0)
    assert params.n_star == equilibrium(params)
    assert params.with_r(2.0) == ModelParams(r=2.0, K=5.0, D=3.0)


@pytest.mark.parametrize("r, K, D", [
    (0.0, 5.0, 0.0), (-1.0, 5.0, 0.0), (1.0, 0.0, 0.0), (1.0, 5.0, -0.1),
    (float("nan"), 5.0, 0.0), (1.0, float("inf"), 0.0), (True, 5.0, 0.0), ("2", 5.0, 0.0),
])
def test_params_validation(r, K, D):
    with pytest.raises(ValueError):
        ModelParams(r=r, K=K, D=D)


def test_growth_rate_inverts_equilibrium():
    params = ModelParams(r=3.3, K=5.0, D=3.0)
    n_star = equilibrium(params)
    assert growth_rate_for_equilibrium(n_star, 5.0, 3.0) == pytest.approx(3.3, rel=1e-12)


@pytest.mark.parametrize("kernel", KERNELS, ids=str)
@pytest.mark.parametrize("D", [0.0, 3.0])
def test_characteristic_at_zero(kernel, D):
    params = ModelParams(r=2.0, K=5.0, D=D)
    tau_m = 1.7
    n_star = equilibrium(params)
    delta = characteristic(params, kernel, tau_m, 0.0).delta
    assert delta.real == pytest.approx(tau_m * params.r * (2.0 * n_star / params.K - 1.0), rel=1e-12)
    assert delta.imag == pytest.approx(0.0, abs=1e-14)
    assert delta.real > 0


@pytest.mark.parametrize("kernel", KERNELS, ids=str)
def test_characteristic_on_imaginary_axis(kernel):
    params = ModelParams(r=2.0, K=5.0, D=3.0)
    tau_m = 0.9
    a, b = linear_coefficients(params, tau_m)
    ts = transforms(kernel)
    for omega in (0.4, 1.8, 3.2):
        point = characteristic(params, kernel, tau_m, complex(0.0, omega))
        assert point.delta.real == pytest.approx(a + b * ts.C(omega), abs=1e-12)
        assert point.delta.imag == pytest.approx(omega - b * ts.S(omega), abs=1e-12)


def test_dirac_hopf_point_without_inflow():
    params = ModelParams(r=2.0, K=5.0, D=0.0)
    point = characteristic(params, DiracKernel(), math.pi / 4, complex(0.0, math.pi / 2))
    assert point.modulus <= 1e-10


def test_weak_gamma_kernel_has_no_imaginary_root():
    params = ModelParams(r=5.0, K=5.0, D=3.0)
    for omega in (0.1, 1.0, 2.0, 5.0, 20.0):
        assert characteristic(params, GammaKernel(1), 3.0, complex(0.0, omega)).modulus > 1e-3


def test_characteristic_rejects_pole_and_bad_delay():
    params = ModelParams(r=5.0, K=5.0, D=3.0)
    with pytest.raises(NumericalError):
        characteristic(params, GammaKernel(2), 1.0, -2.0)
    with pytest.raises(ValueError):
        characteristic(params, DiracKernel(), 0.0, 1j)

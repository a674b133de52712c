"""
Model parameters, the positive equilibrium and the characteristic function
of the logistic model with distributed delay and constant inflow

    dn/dt = r n(t) [1 - (1/K) * integral_0^inf n(t - s) g(s) ds] + D
"""
import math
from dataclasses import dataclass

from utils.errors import NumericalError

from .kernels import BaseKernel

# Minimum distance to the gamma pole lambda = -p
POLE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class ModelParams:
    """
    Parameter triple of the model.

    Args:
        r: Intrinsic growth rate (> 0)
        K: Carrying capacity (> 0)
        D: Constant nutrient inflow rate (>= 0)
    """

    r: float
    K: float
    D: float = 0.0

    def __post_init__(self):
        for name in ("r", "K", "D"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ValueError(f"{name} must be a finite number, got {value!r}")
        if self.r <= 0:
            raise ValueError(f"r must be > 0, got {self.r}")
        if self.K <= 0:
            raise ValueError(f"K must be > 0, got {self.K}")
        if self.D < 0:
            raise ValueError(f"D must be >= 0, got {self.D}")

    def with_r(self, r: float) -> "ModelParams":
        """Copy with a different growth rate."""
        return ModelParams(r=r, K=self.K, D=self.D)

    @property
    def n_star(self) -> float:
        return equilibrium(self)


@dataclass(frozen=True)
class CharacteristicPoint:
    """Value of the characteristic function at a complex frequency (normalized time)."""

    lam: complex
    delta: complex

    @property
    def modulus(self) -> float:
        return abs(self.delta)


def equilibrium(params: ModelParams) -> float:
    """
    Positive equilibrium n* = (1 + sqrt(1 + 4D/(rK))) K / 2.

    Args:
        params: Model parameters

    Returns:
        float: n* (always >= K; equal to K when D = 0)
    """
    r, K, D = params.r, params.K, params.D
    if D == 0:
        return float(K)
    return 0.5 * K * (1.0 + math.sqrt(1.0 + 4.0 * D / (r * K)))


def equilibrium_residual(params: ModelParams, n_star: float = None) -> float:
    """Relative residual of r n (1 - n/K) + D at the equilibrium."""
    n = equilibrium(params) if n_star is None else n_star
    value = params.r * n * (1.0 - n / params.K) + params.D
    scale = max(params.r * n * n / params.K, params.D, 1.0)
    return abs(value) / scale


def growth_rate_for_equilibrium(n_star: float, K: float, D: float) -> float:
    """
    Invert the equilibrium formula: the growth rate r whose equilibrium is n_star.

    Args:
        n_star: Target equilibrium (> K)
        K: Carrying capacity
        D: Inflow rate (> 0)

    Returns:
        float: r = D K / (n*(n* - K))
    """
    return D * K / (n_star * (n_star - K))


def linear_coefficients(params: ModelParams, tau_m: float):
    """
    Coefficients (a, b) of Delta(lambda) = lambda + a + b G_hat(lambda).

    Returns:
        tuple: a = tau_m r (n* - K)/K and b = tau_m r n*/K
    """
    n_star = equilibrium(params)
    a = tau_m * params.r * (n_star - params.K) / params.K
    b = tau_m * params.r * n_star / params.K
    return a, b


def characteristic(params: ModelParams, kernel: BaseKernel, tau_m: float, lam: complex) -> CharacteristicPoint:
    """
    Evaluate the characteristic function
    Delta(lambda) = lambda + tau_m r (n* - K)/K + tau_m (r n*/K) G_hat(lambda).

    Args:
        params: Model parameters
        kernel: Delay kernel
        tau_m: Mean delay (> 0)
        lam: Complex frequency in normalized time

    Returns:
        CharacteristicPoint: (lambda, Delta(lambda))

    Raises:
        ValueError: If tau_m is not positive
        NumericalError: If lambda sits on the gamma pole
    """
    if not tau_m > 0:
        raise ValueError(f"tau_m must be > 0, got {tau_m}")
    lam = complex(lam)
    pole = kernel.pole()
    if pole is not None and abs(lam - pole) < POLE_TOLERANCE:
        raise NumericalError(f"lambda={lam} is within {POLE_TOLERANCE} of the kernel pole {pole}")
    a, b = linear_coefficients(params, tau_m)
    delta = lam + a + b * kernel.laplace(lam)
    return CharacteristicPoint(lam=lam, delta=delta)

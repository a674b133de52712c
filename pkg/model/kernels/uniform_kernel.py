"""
Uniform delay kernel: lags spread evenly over [tau(1 - sigma/2), tau(1 + sigma/2)].
"""
import cmath
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .base_kernel import ArrayLike, BaseKernel

# Below this value of sigma*omega the sin(x)/x factor is taken from its series
SERIES_SWITCH = 1e-4


def _sinc_factor(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Evaluate f(x) = sin(x)/x and df/dx with the removable singularity at 0.

    Args:
        x: Half-width phase sigma*omega/2

    Returns:
        tuple: (f, df/dx)
    """
    small = np.abs(2.0 * x) < SERIES_SWITCH
    x_safe = np.where(small, 1.0, x)
    x2 = x * x

    f_series = 1.0 - x2 / 6.0 + x2 * x2 / 120.0 - x2 * x2 * x2 / 5040.0
    df_series = x * (-1.0 / 3.0 + x2 / 30.0 - x2 * x2 / 840.0)

    f_closed = np.sin(x_safe) / x_safe
    df_closed = (x_safe * np.cos(x_safe) - np.sin(x_safe)) / (x_safe * x_safe)

    return np.where(small, f_series, f_closed), np.where(small, df_series, df_closed)


@dataclass(frozen=True)
class UniformKernel(BaseKernel):
    """Uniform kernel with dimensionless width sigma in (0, 2)."""

    sigma: float
    family = "uniform"

    def __post_init__(self):
        if not isinstance(self.sigma, (int, float)) or not np.isfinite(self.sigma):
            raise ValueError(f"sigma must be a finite number, got {self.sigma!r}")
        if not 0.0 < self.sigma < 2.0:
            raise ValueError(f"sigma must lie strictly inside (0, 2), got {self.sigma}")

    def _factors(self, omega: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        # f(omega) = sin(sigma*omega/2)/(sigma*omega/2) and its omega-derivative
        f, df_dx = _sinc_factor(0.5 * self.sigma * omega)
        return f, 0.5 * self.sigma * df_dx

    def _cosine(self, omega: np.ndarray) -> np.ndarray:
        f, _ = self._factors(omega)
        return np.cos(omega) * f

    def _sine(self, omega: np.ndarray) -> np.ndarray:
        f, _ = self._factors(omega)
        return np.sin(omega) * f

    def _cosine_prime(self, omega: np.ndarray) -> np.ndarray:
        f, df = self._factors(omega)
        return -np.sin(omega) * f + np.cos(omega) * df

    def _sine_prime(self, omega: np.ndarray) -> np.ndarray:
        f, df = self._factors(omega)
        return np.cos(omega) * f + np.sin(omega) * df

    def laplace(self, lam: complex) -> complex:
        # 2 sinh(sigma*lam/2) e^{-lam} / (sigma*lam)
        y = 0.5 * self.sigma * complex(lam)
        if abs(y) < 0.5 * SERIES_SWITCH:
            y2 = y * y
            ratio = 1.0 + y2 / 6.0 + y2 * y2 / 120.0 + y2 * y2 * y2 / 5040.0
        else:
            ratio = cmath.sinh(y) / y
        return ratio * cmath.exp(-complex(lam))

    def density(self, s: ArrayLike, tau_m: float = 1.0) -> ArrayLike:
        lower, upper = self.support(tau_m)
        s_values = np.asarray(s, dtype=float)
        inside = (s_values >= lower) & (s_values <= upper)
        values = np.where(inside, 1.0 / (self.sigma * tau_m), 0.0)
        return float(values) if np.ndim(s) == 0 else values

    def support(self, tau_m: float = 1.0, tail_mass: float = 1e-10) -> Tuple[float, float]:
        return (tau_m * (1.0 - 0.5 * self.sigma), tau_m * (1.0 + 0.5 * self.sigma))

    def variance(self, tau_m: float = 1.0) -> float:
        return (self.sigma * tau_m) ** 2 / 12.0

    def describe(self) -> str:
        return f"uniform:sigma={float(self.sigma)!r}"

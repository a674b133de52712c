"""
Dirac-delta kernel: every lag equals the mean delay tau.
"""
import cmath
from dataclasses import dataclass

import numpy as np

from .base_kernel import ArrayLike, BaseKernel


@dataclass(frozen=True)
class DiracKernel(BaseKernel):
    """Point-mass kernel; the sigma -> 0 limit of the uniform kernel."""

    family = "dirac"

    def _cosine(self, omega: np.ndarray) -> np.ndarray:
        return np.cos(omega)

    def _sine(self, omega: np.ndarray) -> np.ndarray:
        return np.sin(omega)

    def _cosine_prime(self, omega: np.ndarray) -> np.ndarray:
        return -np.sin(omega)

    def _sine_prime(self, omega: np.ndarray) -> np.ndarray:
        return np.cos(omega)

    def laplace(self, lam: complex) -> complex:
        return cmath.exp(-complex(lam))

    def density(self, s: ArrayLike, tau_m: float = 1.0) -> ArrayLike:
        # Atomic: no density function; all mass sits at s = tau_m
        values = np.zeros_like(np.asarray(s, dtype=float))
        return float(values) if np.ndim(s) == 0 else values

    def describe(self) -> str:
        return "dirac"

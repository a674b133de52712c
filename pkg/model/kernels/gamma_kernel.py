"""
Gamma (Erlang) delay kernel of integer order p.

The normalized kernel is g_hat(s) = p^p s^(p-1) e^(-p s) / (p-1)!, whose
Laplace transform is (p / (lambda + p))^p. Orders 1-3 use the rational
closed forms; higher orders use the binomial sums.
"""
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import stats
from scipy.special import comb

from .base_kernel import ArrayLike, BaseKernel


@dataclass(frozen=True)
class GammaKernel(BaseKernel):
    """Gamma kernel with order p >= 1 (p = 1 weak kernel, p = 2 strong kernel)."""

    p: int
    family = "gamma"

    def __post_init__(self):
        if isinstance(self.p, bool) or not isinstance(self.p, (int, np.integer)):
            raise ValueError(f"p must be a positive integer, got {self.p!r}")
        if self.p < 1:
            raise ValueError(f"p must be >= 1, got {self.p}")

    # ------------------------------------------------------------------
    # Binomial sums: C = A(x)/(1+x^2)^p, S = B(x)/(1+x^2)^p with x = omega/p
    # ------------------------------------------------------------------
    def _sums(self, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        p = self.p
        a = np.zeros_like(x)
        b = np.zeros_like(x)
        da = np.zeros_like(x)
        db = np.zeros_like(x)
        for j in range(p // 2 + 1):
            coef = comb(p, 2 * j, exact=True) * (-1) ** j
            a = a + coef * x ** (2 * j)
            if j > 0:
                da = da + coef * 2 * j * x ** (2 * j - 1)
        for j in range((p - 1) // 2 + 1):
            coef = comb(p, 2 * j + 1, exact=True) * (-1) ** j
            b = b + coef * x ** (2 * j + 1)
            db = db + coef * (2 * j + 1) * x ** (2 * j)
        return a, b, da, db

    def _general(self, omega: np.ndarray, which: str) -> np.ndarray:
        p = self.p
        x = omega / p
        a, b, da, db = self._sums(x)
        w = 1.0 + x * x
        scale = w ** (-p)
        if which == "C":
            return a * scale
        if which == "S":
            return b * scale
        # d/domega = (1/p) d/dx
        dscale = -2.0 * p * x * w ** (-p - 1)
        if which == "dC":
            return (da * scale + a * dscale) / p
        return (db * scale + b * dscale) / p

    def _cosine(self, omega: np.ndarray) -> np.ndarray:
        if self.p == 1:
            return 1.0 / (1.0 + omega ** 2)
        if self.p == 2:
            u = omega ** 2 / 4.0
            return (1.0 - u) / (1.0 + u) ** 2
        if self.p == 3:
            v = omega ** 2 / 9.0
            return (1.0 - 3.0 * v) / (1.0 + v) ** 3
        return self._general(omega, "C")

    def _sine(self, omega: np.ndarray) -> np.ndarray:
        if self.p == 1:
            return omega / (1.0 + omega ** 2)
        if self.p == 2:
            return omega / (1.0 + omega ** 2 / 4.0) ** 2
        if self.p == 3:
            return omega * (1.0 - omega ** 2 / 27.0) / (1.0 + omega ** 2 / 9.0) ** 3
        return self._general(omega, "S")

    def _cosine_prime(self, omega: np.ndarray) -> np.ndarray:
        if self.p == 1:
            return -2.0 * omega / (1.0 + omega ** 2) ** 2
        if self.p == 2:
            u = omega ** 2 / 4.0
            return 0.5 * omega * (u - 3.0) / (1.0 + u) ** 3
        if self.p == 3:
            v = omega ** 2 / 9.0
            return (4.0 * omega / 3.0) * (v - 1.0) / (1.0 + v) ** 4
        return self._general(omega, "dC")

    def _sine_prime(self, omega: np.ndarray) -> np.ndarray:
        if self.p == 1:
            w2 = omega ** 2
            return (1.0 - w2) / (1.0 + w2) ** 2
        if self.p == 2:
            u = omega ** 2 / 4.0
            return (1.0 - 3.0 * u) / (1.0 + u) ** 3
        if self.p == 3:
            v = omega ** 2 / 9.0
            return (v * v - 6.0 * v + 1.0) / (1.0 + v) ** 4
        return self._general(omega, "dS")

    def binomial_transforms(self, omega: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
        """
        Evaluate C and S through the binomial sums regardless of the order.

        Args:
            omega: Frequency value(s), >= 0

        Returns:
            tuple: (C, S)
        """
        values = np.asarray(omega, dtype=float)
        c = self._general(values, "C")
        s = self._general(values, "S")
        if np.ndim(omega) == 0:
            return float(c), float(s)
        return c, s

    def laplace(self, lam: complex) -> complex:
        p = self.p
        return (p / (complex(lam) + p)) ** p

    def pole(self) -> Optional[float]:
        return -float(self.p)

    def rate(self, tau_m: float) -> float:
        """Rate gamma = p / tau_m of the unnormalized kernel."""
        return self.p / tau_m

    def density(self, s: ArrayLike, tau_m: float = 1.0) -> ArrayLike:
        values = stats.gamma.pdf(np.asarray(s, dtype=float), a=self.p, scale=tau_m / self.p)
        return float(values) if np.ndim(s) == 0 else values

    def density_prime(self, s: ArrayLike, tau_m: float = 1.0) -> ArrayLike:
        """Derivative g'(s) of the unnormalized density."""
        s_values = np.asarray(s, dtype=float)
        rate = self.rate(tau_m)
        scale = rate ** self.p / math.factorial(self.p - 1) * np.exp(-rate * s_values)
        if self.p == 1:
            values = -rate * scale
        else:
            values = scale * ((self.p - 1) * s_values ** (self.p - 2) - rate * s_values ** (self.p - 1))
        return float(values) if np.ndim(s) == 0 else values

    def support(self, tau_m: float = 1.0, tail_mass: float = 1e-10) -> Tuple[float, float]:
        upper = float(stats.gamma.isf(tail_mass, a=self.p, scale=tau_m / self.p))
        return (0.0, upper)

    def variance(self, tau_m: float = 1.0) -> float:
        return tau_m ** 2 / self.p

    def describe(self) -> str:
        return f"gamma:p={self.p}"

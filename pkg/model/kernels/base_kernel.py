"""
Base delay kernel class.
Contains the transform plumbing shared by every kernel family; child classes
supply the closed forms of the NORMALIZED kernel (mean delay 1).
"""
from abc import ABC, abstractmethod
from typing import Optional, Tuple, Union

import numpy as np

ArrayLike = Union[float, np.ndarray]


def as_omega_array(omega: ArrayLike) -> Tuple[np.ndarray, bool]:
    """
    Convert a frequency argument to a float array and validate it.

    Args:
        omega: Scalar or array of frequencies

    Returns:
        tuple: (array, is_scalar)

    Raises:
        ValueError: If any frequency is negative or not finite
    """
    is_scalar = np.ndim(omega) == 0
    values = np.asarray(omega, dtype=float)
    if not np.all(np.isfinite(values)):
        raise ValueError(f"omega must be finite, got {omega}")
    if np.any(values < 0.0):
        raise ValueError(f"omega must be >= 0, got {omega}")
    return values, is_scalar


def as_output(values: np.ndarray, is_scalar: bool) -> ArrayLike:
    """Return a Python float for scalar input, the array otherwise."""
    if is_scalar:
        return float(values)
    return values


class BaseKernel(ABC):
    """
    Base class for the delay kernel families.

    The frequency functions C, S and their derivatives take the dimensionless
    frequency of the normalized kernel g_hat(s) = tau_m * g(tau_m * s), so
    C(0) = 1, S(0) = 0 and S'(0) = 1 for every family.
    """

    #: Family tag used in config strings and CSV metadata
    family = "base"

    @abstractmethod
    def _cosine(self, omega: np.ndarray) -> np.ndarray:
        """C(omega) on a validated array."""

    @abstractmethod
    def _sine(self, omega: np.ndarray) -> np.ndarray:
        """S(omega) on a validated array."""

    @abstractmethod
    def _cosine_prime(self, omega: np.ndarray) -> np.ndarray:
        """C'(omega) on a validated array."""

    @abstractmethod
    def _sine_prime(self, omega: np.ndarray) -> np.ndarray:
        """S'(omega) on a validated array."""

    @abstractmethod
    def laplace(self, lam: complex) -> complex:
        """
        Laplace transform G_hat(lambda) of the normalized kernel.

        Args:
            lam: Complex frequency in normalized time

        Returns:
            complex: G_hat(lambda)
        """

    @abstractmethod
    def density(self, s: ArrayLike, tau_m: float = 1.0) -> ArrayLike:
        """
        Kernel density g(s) for mean delay tau_m (tau_m = 1 gives g_hat).

        Args:
            s: Lag value(s), s >= 0
            tau_m: Mean delay

        Returns:
            Density value(s)
        """

    @abstractmethod
    def describe(self) -> str:
        """Config-string form of the kernel, e.g. 'gamma:p=2'."""

    def pole(self) -> Optional[float]:
        """Real pole of G_hat in normalized time, or None if G_hat is entire."""
        return None

    def variance(self, tau_m: float = 1.0) -> float:
        """Variance of the lag distribution with mean delay tau_m."""
        return 0.0

    def support(self, tau_m: float = 1.0, tail_mass: float = 1e-10) -> Tuple[float, float]:
        """
        Lag interval holding all but tail_mass of the kernel mass.

        Args:
            tau_m: Mean delay
            tail_mass: Mass allowed beyond the upper end

        Returns:
            tuple: (lower, upper) lag bounds
        """
        return (tau_m, tau_m)

    def transforms(self) -> "KernelTransforms":
        """Evaluator bundle for C, S, C' and S' of this kernel."""
        from .transforms import KernelTransforms
        return KernelTransforms(self)

    def __str__(self):
        return self.describe()

"""
Finite-dimensional eigenvalue oracle for gamma kernels.

Multiplying Delta(lambda) by (lambda + p)^p gives the polynomial
    (lambda + a)(lambda + p)^p + b p^p,
whose roots (companion-matrix eigenvalues) are the characteristic roots.
"""
import logging

import numpy as np

from model import GammaKernel, ModelParams, characteristic, linear_coefficients
from utils.errors import NumericalError

logger = logging.getLogger(__name__)

MAX_ORDER = 8


def characteristic_polynomial(params: ModelParams, p: int, tau_m: float) -> np.ndarray:
    """
    Coefficients (highest degree first) of (lambda + a)(lambda + p)^p + b p^p.

    Args:
        params: Model parameters
        p: Gamma kernel order
        tau_m: Mean delay

    Returns:
        np.ndarray: p + 2 coefficients
    """
    a, b = linear_coefficients(params, tau_m)
    coeffs = np.array([1.0, a])
    for _ in range(p):
        coeffs = np.polymul(coeffs, [1.0, float(p)])
    coeffs[-1] += b * float(p) ** p
    return coeffs


def gamma_eigen_roots(params: ModelParams, p: int, tau_m: float) -> np.ndarray:
    """
    Characteristic roots (normalized time) of the gamma-kernel model.

    Raises:
        ValueError: If p is outside 1..8 or tau_m <= 0
        NumericalError: If the root finder returns non-finite values or no root survives back-substitution
    """
    if not 1 <= p <= MAX_ORDER:
        raise ValueError(f"p must be in 1..{MAX_ORDER} for the eigenvalue oracle, got {p}")
    if not tau_m > 0:
        raise ValueError(f"tau_m must be > 0, got {tau_m}")

    coeffs = characteristic_polynomial(params, p, tau_m)
    try:
        roots = np.roots(coeffs)
    except np.linalg.LinAlgError as e:
        raise NumericalError(f"companion eigenvalues did not converge: {e}") from e
    if not np.all(np.isfinite(roots)):
        raise NumericalError("non-finite characteristic roots")

    kernel = GammaKernel(p)
    a, b = linear_coefficients(params, tau_m)
    scale = 1.0 + abs(a) + abs(b)
    kept = []
    for root in roots:
        if abs(root + p) < 1e-12:
            continue
        residual = characteristic(params, kernel, tau_m, complex(root)).modulus
        if residual <= 1e-6 * scale * (1.0 + abs(root)):
            kept.append(root)
        else:
            logger.debug(f"Discarding spurious root {root} (|Delta|={residual:.3e})")
    if not kept:
        raise NumericalError("no characteristic root survived back-substitution")
    return np.array(kept)


def gamma_eigen_oracle(params: ModelParams, p: int, tau_m: float) -> float:
    """
    Largest real part among the characteristic roots (normalized time).

    Args:
        params: Model parameters
        p: Gamma kernel order (1..8)
        tau_m: Mean delay (> 0)

    Returns:
        float: max Re(lambda); negative means n* is linearly stable
    """
    return float(np.max(np.real(gamma_eigen_roots(params, p, tau_m))))

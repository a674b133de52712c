"""
Crossing frequencies of the characteristic equation on the imaginary axis.

Roots are located by a sign scan over a uniform omega grid followed by
bracketed refinement, then labelled with the sign of C'(omega).
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np
from scipy.optimize import brentq

from model import BaseKernel, DiracKernel, GammaKernel, UniformKernel, transforms
from utils.errors import NumericalError

logger = logging.getLogger(__name__)

OMEGA_MIN = 1e-6
OMEGA_MAX = 8.0 * math.pi
SCAN_STEP = 1e-3
ROOT_XTOL = 1e-12
# Crossings need S(omega) > 0 to give a positive mean delay
SINE_FLOOR = 1e-9


@dataclass(frozen=True)
class CrossingRoot:
    """A root of C(omega) = level with the slope information used for transversality."""

    omega: float
    c_prime: float
    s_value: float

    @property
    def descending(self) -> bool:
        """True when C'(omega) < 0 (roots cross from left to right)."""
        return self.c_prime < 0


@dataclass(frozen=True)
class D0Crossings:
    """All roots of C in the scan window and the first admissible crossing."""

    kernel: BaseKernel
    roots: List[CrossingRoot] = field(default_factory=list)

    @property
    def descending(self) -> List[CrossingRoot]:
        return [root for root in self.roots if root.descending]

    @property
    def omega0(self) -> Optional[float]:
        """Smallest root with C'(omega) < 0 and S(omega) > 0, or None."""
        for root in self.roots:
            if root.descending and root.s_value > SINE_FLOOR:
                return root.omega
        return None


def scan_roots(func: Callable[[np.ndarray], np.ndarray],
               omega_min: float = OMEGA_MIN,
               omega_max: float = OMEGA_MAX,
               step: float = SCAN_STEP,
               xtol: float = ROOT_XTOL) -> List[float]:
    """
    Find every sign change of func on [omega_min, omega_max].

    Args:
        func: Vectorized function of omega
        omega_min: Left end of the scan window
        omega_max: Right end of the scan window
        step: Grid spacing of the sign scan
        xtol: Absolute tolerance of the bracketed refinement

    Returns:
        list: Sorted roots

    Raises:
        NumericalError: If the refinement fails to converge
    """
    if omega_max <= omega_min:
        return []
    count = int(math.ceil((omega_max - omega_min) / step)) + 1
    grid = np.linspace(omega_min, omega_max, count)
    values = np.asarray(func(grid), dtype=float)
    if not np.all(np.isfinite(values)):
        raise NumericalError("non-finite value during root scan")

    def scalar(x):
        return float(func(np.asarray([x]))[0])

    roots = []
    for i in range(count):
        if values[i] == 0.0:
            roots.append(float(grid[i]))
            continue
        if i + 1 < count and values[i + 1] != 0.0 and values[i] * values[i + 1] < 0.0:
            try:
                root = brentq(scalar, grid[i], grid[i + 1], xtol=xtol, maxiter=200)
            except (RuntimeError, ValueError) as e:
                raise NumericalError(f"root refinement failed in [{grid[i]}, {grid[i + 1]}]: {e}") from e
            roots.append(float(root))
    logger.debug(f"Root scan on [{omega_min}, {omega_max}] found {len(roots)} roots")
    return roots


def level_crossings(kernel: BaseKernel, level: float,
                    omega_max: float = OMEGA_MAX, step: float = SCAN_STEP) -> List[CrossingRoot]:
    """
    Roots of C(omega) = level, each labelled with C' and S.

    Args:
        kernel: Delay kernel
        level: Target value K/n* - 1 (0 when D = 0)
        omega_max: Right end of the scan window
        step: Scan grid spacing

    Returns:
        list: CrossingRoot entries ordered by omega
    """
    ts = transforms(kernel)
    roots = scan_roots(lambda w: ts.C(w) - level, omega_max=omega_max, step=step)
    return [CrossingRoot(omega=w, c_prime=ts.C_prime(w), s_value=ts.S(w)) for w in roots]


def crossing_frequencies_d0(kernel: BaseKernel, omega_max: float = OMEGA_MAX,
                            step: float = SCAN_STEP) -> D0Crossings:
    """
    Roots of C(omega) = 0 in the scan window (the D = 0 crossing condition).

    Args:
        kernel: Delay kernel
        omega_max: Right end of the scan window (default 8*pi)
        step: Scan grid spacing

    Returns:
        D0Crossings: All roots labelled with the sign of C', plus omega0.
        An empty result means n* = K is stable for every mean delay.
    """
    return D0Crossings(kernel=kernel, roots=level_crossings(kernel, 0.0, omega_max, step))


def hopf_delay_d0(kernel: BaseKernel, r: float, omega_max: float = OMEGA_MAX) -> Optional[float]:
    """
    First Hopf delay tau_m* = omega0 / (r S(omega0)) when D = 0.

    Args:
        kernel: Delay kernel
        r: Growth rate (> 0)
        omega_max: Right end of the scan window

    Returns:
        float or None: tau_m*, or None when no crossing exists
    """
    if not r > 0:
        raise ValueError(f"r must be > 0, got {r}")
    omega0 = crossing_frequencies_d0(kernel, omega_max).omega0
    if omega0 is None:
        return None
    return omega0 / (r * transforms(kernel).S(omega0))


# ----------------------------------------------------------------------
# Closed forms for the D = 0 case
# ----------------------------------------------------------------------
def dirac_d0_hopf_delay(r: float) -> float:
    """Hopf delay pi/(2r) of the fixed-delay model without inflow."""
    return math.pi / (2.0 * r)


def uniform_d0_hopf_delay(sigma: float, r: float) -> float:
    """Hopf delay pi^2 sigma / (8 r sin(sigma pi / 4)) of the uniform kernel without inflow."""
    return math.pi ** 2 * sigma / (8.0 * r * math.sin(sigma * math.pi / 4.0))


def gamma_d0_threshold(p: int) -> float:
    """
    Coefficient c_p with stability condition r < c_p * gamma when D = 0.

    Returns:
        float: tan(pi/(2p)) / cos(pi/(2p))^p (infinite for p = 1)
    """
    if p == 1:
        return math.inf
    angle = math.pi / (2.0 * p)
    return math.tan(angle) / math.cos(angle) ** p


def gamma_d0_hopf_delay(p: int, r: float) -> Optional[float]:
    """Hopf delay p * c_p / r of the gamma kernel without inflow (None for p = 1)."""
    if p == 1:
        return None
    return p * gamma_d0_threshold(p) / r


def closed_form_d0_hopf_delay(kernel: BaseKernel, r: float) -> Optional[float]:
    """Dispatch to the closed-form D = 0 Hopf delay of a kernel family."""
    if isinstance(kernel, DiracKernel):
        return dirac_d0_hopf_delay(r)
    if isinstance(kernel, UniformKernel):
        return uniform_d0_hopf_delay(kernel.sigma, r)
    if isinstance(kernel, GammaKernel):
        return gamma_d0_hopf_delay(kernel.p, r)
    raise ValueError(f"no closed form for kernel {kernel}")

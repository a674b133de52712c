"""
Hopf points and Hopf bifurcation curves in the (r, tau_m) plane.

At fixed (r, K, D) a crossing frequency solves
    C(omega) = K/n* - 1   and   S(omega) = omega K / (tau_m r n*),
so tau_m = omega K / (r n* S(omega)). For D > 0 the curve is traced with
omega as the parameter: n* = K/(1 + C), r = D K / (n*(n* - K)).
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Tuple

import numpy as np

from model import (
    BaseKernel, ModelParams, characteristic, equilibrium,
    growth_rate_for_equilibrium, transforms
)
from utils.errors import NumericalError

from .crossings import OMEGA_MAX, SCAN_STEP, SINE_FLOOR, level_crossings, scan_roots

logger = logging.getLogger(__name__)

RESIDUAL_TOLERANCE = 1e-9
DEGENERATE_TOLERANCE = 1e-10
BAND_MARGIN = 1e-8


class Crossing(Enum):
    """Direction in which a root pair crosses the imaginary axis as tau_m increases."""
    LEFT_TO_RIGHT = "LeftToRight"
    RIGHT_TO_LEFT = "RightToLeft"

    @property
    def sign(self) -> int:
        return 1 if self is Crossing.LEFT_TO_RIGHT else -1


@dataclass(frozen=True)
class HopfPoint:
    """A pure-imaginary crossing at normalized frequency omega."""

    omega: float
    r: float
    tau_m: float
    crossing: Crossing


@dataclass(frozen=True)
class GammaThresholds:
    """Existence thresholds of the gamma-kernel Hopf curves when D > 0."""

    r_star: float
    r_lower: float
    r_upper: float


@dataclass
class HopfCurve:
    """Hopf points ordered by omega, with the data that produced them."""

    kernel: BaseKernel
    K: float
    D: float
    points: List[HopfPoint] = field(default_factory=list)
    # omega values where S -> 0 inside the band (tau_m -> infinity)
    asymptotes: List[float] = field(default_factory=list)

    @property
    def omegas(self) -> np.ndarray:
        return np.array([point.omega for point in self.points])

    @property
    def r_values(self) -> np.ndarray:
        return np.array([point.r for point in self.points])

    @property
    def tau_values(self) -> np.ndarray:
        return np.array([point.tau_m for point in self.points])

    def asymptote_r(self) -> List[float]:
        """Growth rates at which the curve has a vertical asymptote."""
        ts = transforms(self.kernel)
        values = []
        for omega in self.asymptotes:
            n_star = self.K / (1.0 + ts.C(omega))
            values.append(growth_rate_for_equilibrium(n_star, self.K, self.D))
        return values


# ----------------------------------------------------------------------
# Transversality
# ----------------------------------------------------------------------
def tau_at_fixed_r(kernel: BaseKernel, params: ModelParams, omega: float) -> float:
    """
    tau_m(omega) = -K omega C(omega) / (r (n* - K) S(omega)) with r and n* held fixed.

    Only meaningful when D > 0 (n* > K).
    """
    ts = transforms(kernel)
    n_star = equilibrium(params)
    return -params.K * omega * ts.C(omega) / (params.r * (n_star - params.K) * ts.S(omega))


def dtau_domega(kernel: BaseKernel, params: ModelParams, tau_m: float, omega: float) -> float:
    """
    Analytic derivative of tau_at_fixed_r at a crossing:
    -(tau_m n* / ((n* - K) omega)) (C + omega (C'S - C S') / S).
    """
    ts = transforms(kernel)
    n_star = equilibrium(params)
    c, s = ts.C(omega), ts.S(omega)
    dc, ds = ts.C_prime(omega), ts.S_prime(omega)
    return -(tau_m * n_star / ((n_star - params.K) * omega)) * (c + omega * (dc * s - c * ds) / s)


def crossing_equation_residuals(kernel: BaseKernel, params: ModelParams,
                                omega: float, tau_m: float) -> Tuple[float, float]:
    """Residuals of C(omega) = K/n* - 1 and S(omega) = omega K / (tau_m r n*)."""
    ts = transforms(kernel)
    n_star = equilibrium(params)
    res_c = ts.C(omega) - (params.K / n_star - 1.0)
    res_s = ts.S(omega) - omega * params.K / (tau_m * params.r * n_star)
    return res_c, res_s


def transversality_value(kernel: BaseKernel, params: ModelParams, omega: float, tau_m: float) -> float:
    """
    Signed value of Re (d lambda / d tau_m)^(-1) at lambda = i omega.

    D > 0:  r (n* - K) / q^2 * (r tau_m n* S' - K + (K omega / tau_m) dtau/domega)
    D = 0:  -(tau_m / omega) C'(omega)
    """
    ts = transforms(kernel)
    if params.D == 0:
        return -(tau_m / omega) * ts.C_prime(omega)

    r, K = params.r, params.K
    n_star = equilibrium(params)
    c, s = ts.C(omega), ts.S(omega)
    bracket = (r * tau_m * n_star * ts.S_prime(omega) - K
               + (K * omega / tau_m) * dtau_domega(kernel, params, tau_m, omega))
    q2 = (r * (n_star - K) + r * n_star * c) ** 2 + (r * n_star * s) ** 2
    return r * (n_star - K) / q2 * bracket


def transversality_dpos(kernel: BaseKernel, K: float, D: float, point: HopfPoint) -> Crossing:
    """
    Direction of the crossing at a Hopf point.

    Args:
        kernel: Delay kernel
        K: Carrying capacity
        D: Inflow rate
        point: Point satisfying both crossing equations

    Returns:
        Crossing: LEFT_TO_RIGHT (stability lost) or RIGHT_TO_LEFT (stability regained)

    Raises:
        NumericalError: If the point is off the crossing equations or the crossing is tangential
    """
    params = ModelParams(r=point.r, K=K, D=D)
    res_c, res_s = crossing_equation_residuals(kernel, params, point.omega, point.tau_m)
    if abs(res_c) > RESIDUAL_TOLERANCE or abs(res_s) > RESIDUAL_TOLERANCE:
        raise NumericalError(
            f"point omega={point.omega} is not on the crossing equations (residuals {res_c:.3e}, {res_s:.3e})")
    value = transversality_value(kernel, params, point.omega, point.tau_m)
    if abs(value) < DEGENERATE_TOLERANCE:
        raise NumericalError(f"degenerate (tangential) crossing at omega={point.omega}")
    return Crossing.LEFT_TO_RIGHT if value > 0 else Crossing.RIGHT_TO_LEFT


def characteristic_residual(kernel: BaseKernel, params: ModelParams, omega: float, tau_m: float) -> float:
    """|Delta(i omega)| at a candidate Hopf point."""
    return characteristic(params, kernel, tau_m, complex(0.0, omega)).modulus


# ----------------------------------------------------------------------
# Hopf points at fixed r
# ----------------------------------------------------------------------
def hopf_points_at(params: ModelParams, kernel: BaseKernel, omega_max: float = OMEGA_MAX,
                   step: float = SCAN_STEP) -> List[HopfPoint]:
    """
    All Hopf points for fixed (r, K, D), sorted by tau_m.

    Args:
        params: Model parameters
        kernel: Delay kernel
        omega_max: Right end of the frequency scan window
        step: Scan grid spacing

    Returns:
        list: HopfPoint entries with their crossing directions
    """
    n_star = equilibrium(params)
    level = params.K / n_star - 1.0
    points = []
    for root in level_crossings(kernel, level, omega_max, step):
        if root.s_value <= SINE_FLOOR:
            continue
        tau_m = root.omega * params.K / (params.r * n_star * root.s_value)
        point = HopfPoint(omega=root.omega, r=params.r, tau_m=tau_m, crossing=Crossing.LEFT_TO_RIGHT)
        try:
            crossing = transversality_dpos(kernel, params.K, params.D, point)
        except NumericalError as e:
            logger.warning(f"Skipping crossing at omega={root.omega:.6g}: {e}")
            continue
        points.append(HopfPoint(omega=root.omega, r=params.r, tau_m=tau_m, crossing=crossing))
    points.sort(key=lambda point: point.tau_m)
    logger.debug(f"{len(points)} Hopf points for r={params.r}, K={params.K}, D={params.D}, kernel={kernel}")
    return points


# ----------------------------------------------------------------------
# Hopf curve for D > 0
# ----------------------------------------------------------------------
def _band_edges(kernel: BaseKernel, omega_max: float) -> Tuple[List[float], List[float]]:
    """Roots of C, C + 1 and S in the scan window; the S roots are returned separately."""
    ts = transforms(kernel)
    edges = scan_roots(ts.C, omega_max=omega_max) + scan_roots(lambda w: ts.C(w) + 1.0, omega_max=omega_max)
    sine_roots = scan_roots(ts.S, omega_max=omega_max)
    return edges + sine_roots, sine_roots


def hopf_curve_dpos(kernel: BaseKernel, K: float, D: float, omega_max: float = OMEGA_MAX,
                    n_points: int = 4000) -> HopfCurve:
    """
    Trace the Hopf bifurcation curve in the (r, tau_m) plane for D > 0.

    Args:
        kernel: Delay kernel
        K: Carrying capacity (> 0)
        D: Inflow rate (> 0)
        omega_max: Right end of the omega window
        n_points: Number of omega samples across the window

    Returns:
        HopfCurve: Points ordered by omega plus the asymptote frequencies

    Raises:
        ValueError: If D <= 0 or K <= 0
    """
    if not D > 0:
        raise ValueError(f"D must be > 0 for the Hopf curve, got {D}")
    if not K > 0:
        raise ValueError(f"K must be > 0, got {K}")

    ts = transforms(kernel)
    edges, sine_roots = _band_edges(kernel, omega_max)
    curve = HopfCurve(kernel=kernel, K=K, D=D)

    omegas = np.linspace(1e-6, omega_max, n_points)
    c_values = ts.C(omegas)
    s_values = ts.S(omegas)
    # n* > K strictly: C rounding to zero at a window end gives n* == K
    admissible = (c_values > -1.0) & (1.0 + c_values < 1.0) & (s_values > 0.0)
    if edges:
        distance = np.min(np.abs(omegas[:, None] - np.asarray(edges)[None, :]), axis=1)
        admissible &= distance > BAND_MARGIN

    for omega, c, s in zip(omegas[admissible], c_values[admissible], s_values[admissible]):
        omega, c, s = float(omega), float(c), float(s)
        n_star = K / (1.0 + c)
        if not (math.isfinite(n_star) and n_star > K):
            continue
        r = growth_rate_for_equilibrium(n_star, K, D)
        if not (math.isfinite(r) and r > 0):
            continue
        tau_m = omega * K / (r * n_star * s)
        if not (math.isfinite(tau_m) and tau_m > 0):
            continue
        params = ModelParams(r=r, K=K, D=D)
        residual = characteristic_residual(kernel, params, omega, tau_m)
        if residual > RESIDUAL_TOLERANCE:
            logger.debug(f"Dropping omega={omega:.6g}: |Delta(i omega)|={residual:.3e}")
            continue
        candidate = HopfPoint(omega=omega, r=r, tau_m=tau_m, crossing=Crossing.LEFT_TO_RIGHT)
        try:
            crossing = transversality_dpos(kernel, K, D, candidate)
        except NumericalError as e:
            logger.debug(f"Dropping omega={omega:.6g}: {e}")
            continue
        curve.points.append(HopfPoint(omega=omega, r=r, tau_m=tau_m, crossing=crossing))

    # S -> 0 with C inside (-1, 0): tau_m diverges (vertical asymptote)
    for omega in sine_roots:
        c = ts.C(omega)
        if -1.0 < c < 0.0:
            curve.asymptotes.append(omega)

    logger.info(f"Hopf curve for {kernel}, K={K}, D={D}: {len(curve.points)} points, "
                f"{len(curve.asymptotes)} asymptotes")
    return curve


# ----------------------------------------------------------------------
# Closed forms
# ----------------------------------------------------------------------
def gamma_thresholds(K: float, D: float) -> GammaThresholds:
    """
    Closed-form thresholds for the gamma kernel with inflow.

    r_star = 49D/(8K) (p = 2 existence), r_lower = 9D/(4K) and
    r_upper = 49D/(8K) (p = 3 two-crossing band and vertical asymptote).
    """
    return GammaThresholds(r_star=49.0 * D / (8.0 * K), r_lower=9.0 * D / (4.0 * K), r_upper=49.0 * D / (8.0 * K))


def gamma_p2_omega_pm(params: ModelParams) -> Tuple[float, float]:
    """
    Explicit crossing frequencies (omega_minus, omega_plus) for the gamma kernel with p = 2.

    Raises:
        ValueError: If D = 0 or r <= 49D/(8K) (no crossing)
    """
    K, D = params.K, params.D
    if D == 0 or params.r <= gamma_thresholds(K, D).r_star:
        raise ValueError(f"r must exceed r* = 49D/(8K) for p=2 crossings, got r={params.r}")
    n_star = equilibrium(params)
    gap = n_star - K
    root = math.sqrt(n_star * (8.0 * K - 7.0 * n_star) / gap ** 2)
    base = 2.0 * n_star / gap - 4.0
    return math.sqrt(base - 2.0 * root), math.sqrt(base + 2.0 * root)


def dirac_dpos_hopf(params: ModelParams) -> Tuple[float, float]:
    """
    First Hopf point of the fixed-delay model with inflow.

    Returns:
        tuple: (omega0, tau*) with omega0 = arccos(K/n* - 1) and
            tau* = omega0 K / (r n* sin(omega0))
    """
    n_star = equilibrium(params)
    omega0 = math.acos(params.K / n_star - 1.0)
    return omega0, omega0 * params.K / (params.r * n_star * math.sin(omega0))


def stability_region(kernel: BaseKernel, K: float, D: float, r_values, omega_max: float = OMEGA_MAX):
    """
    Hopf delays for each growth rate, describing the stable/unstable intervals.

    Args:
        kernel: Delay kernel
        K: Carrying capacity
        D: Inflow rate
        r_values: Iterable of growth rates
        omega_max: Right end of the frequency scan window

    Returns:
        list: (r, [HopfPoint, ...]) pairs, Hopf points sorted by tau_m
    """
    rows = []
    for r in r_values:
        params = ModelParams(r=float(r), K=K, D=D)
        rows.append((float(r), hopf_points_at(params, kernel, omega_max)))
    return rows

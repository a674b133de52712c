"""
Linear stability verdict for n* at a given mean delay.

Roots of the characteristic equation enter or leave the right half-plane only
through the imaginary axis, so the number of unstable root pairs at tau_m is
the signed count of Hopf crossings with tau_m' <= tau_m.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

from model import BaseKernel, ModelParams

from .crossings import OMEGA_MAX
from .hopf_curve import HopfPoint, hopf_points_at

logger = logging.getLogger(__name__)

MARGINAL_TOLERANCE = 1e-9


class StabilityState(Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"


@dataclass(frozen=True)
class StabilityVerdict:
    """
    Verdict for one parameter point.

    Args:
        state: Stable or Unstable
        margin: Distance in tau_m to the nearest Hopf point, None if none exists
        marginal: True when tau_m sits on a Hopf point (linearization inconclusive)
        unstable_pairs: Net number of root pairs in the right half-plane
        hopf_points: The Hopf set the verdict was counted against
    """

    state: StabilityState
    margin: Optional[float]
    marginal: bool = False
    unstable_pairs: int = 0
    hopf_points: List[HopfPoint] = field(default_factory=list)

    @property
    def is_stable(self) -> bool:
        return self.state is StabilityState.STABLE


def count_unstable_pairs(hopf_points: List[HopfPoint], tau_m: float) -> int:
    """Signed crossing count for all Hopf points with tau_m' <= tau_m."""
    net = 0
    for point in hopf_points:
        if point.tau_m <= tau_m:
            net += point.crossing.sign
    if net < 0:
        logger.warning(f"Negative crossing count {net} at tau_m={tau_m}; clamping to 0")
        net = 0
    return net


def classify(params: ModelParams, kernel: BaseKernel, tau_m: float,
             omega_max: float = OMEGA_MAX, hopf_points: List[HopfPoint] = None) -> StabilityVerdict:
    """
    Classify the linear stability of n* at mean delay tau_m.

    Args:
        params: Model parameters
        kernel: Delay kernel
        tau_m: Mean delay (>= 0)
        omega_max: Right end of the frequency scan window
        hopf_points: Precomputed Hopf set for (params, kernel), reused across delays

    Returns:
        StabilityVerdict: Stable iff no root pair sits in the right half-plane
    """
    if tau_m < 0:
        raise ValueError(f"tau_m must be >= 0, got {tau_m}")
    if hopf_points is None:
        hopf_points = hopf_points_at(params, kernel, omega_max)

    margin = min((abs(tau_m - point.tau_m) for point in hopf_points), default=None)

    if tau_m == 0:
        # Zero delay: lambda = -r(2n*/K - 1) < 0
        return StabilityVerdict(state=StabilityState.STABLE, margin=margin, hopf_points=hopf_points)

    if margin is not None and margin <= MARGINAL_TOLERANCE * max(1.0, tau_m):
        return StabilityVerdict(state=StabilityState.UNSTABLE, margin=0.0, marginal=True,
                                unstable_pairs=count_unstable_pairs(hopf_points, tau_m),
                                hopf_points=hopf_points)

    pairs = count_unstable_pairs(hopf_points, tau_m)
    state = StabilityState.STABLE if pairs == 0 else StabilityState.UNSTABLE
    logger.debug(f"classify r={params.r} tau_m={tau_m} {kernel}: {state.value} ({pairs} pairs)")
    return StabilityVerdict(state=state, margin=margin, unstable_pairs=pairs, hopf_points=hopf_points)

"""
Figure presets combining the Hopf curve, a bifurcation sweep and trajectories.
"""
from model import GammaKernel, UniformKernel, equilibrium
from stability import gamma_thresholds, hopf_curve_dpos

from .base_figure import BaseFigure


class UniformHopfFigure(BaseFigure):
    """Uniform kernel, sigma = 1, r = 2: single loss of stability."""

    figure_id = "fig4"
    title = "Uniform kernel (sigma=1): Hopf curve, bifurcation diagram and phase portraits at r=2"

    SIGMA = 1.0
    R = 2.0
    TAU_RANGE = (0.5, 1.2)
    SWEEP_POINTS = 36
    DELAYS = (0.83, 0.85, 0.86)

    def build(self):
        kernel = UniformKernel(self.SIGMA)
        curve = hopf_curve_dpos(kernel, self.K, self.D)
        self.write_hopf("hopf_curve", curve.points, kernel)
        self.bundle.summary["n_star"] = equilibrium(self.params(self.R))
        self.bundle.summary["hopf"] = self.hopf_summary(self.R, kernel)
        self.sweep("bifurcation", self.R, kernel, self.TAU_RANGE, self.SWEEP_POINTS)
        self.trajectories(self.R, kernel, self.DELAYS, f"r_{self.R:g}")


class GammaSwitchingFigure(BaseFigure):
    """Gamma kernel p = 2, r = 5: stability lost and regained."""

    figure_id = "fig6"
    title = "Gamma kernel (p=2): stability switching at r=5"

    P = 2
    R = 5.0
    TAU_RANGE = (0.5, 12.0)
    SWEEP_POINTS = 47
    DELAYS = (0.5, 5.0, 11.0)

    def build(self):
        kernel = GammaKernel(self.P)
        curve = hopf_curve_dpos(kernel, self.K, self.D)
        self.write_hopf("hopf_curve", curve.points, kernel)
        self.bundle.summary["r_star"] = gamma_thresholds(self.K, self.D).r_star
        self.bundle.summary["n_star"] = equilibrium(self.params(self.R))
        self.bundle.summary["hopf"] = self.hopf_summary(self.R, kernel)
        self.sweep("bifurcation", self.R, kernel, self.TAU_RANGE, self.SWEEP_POINTS)
        self.trajectories(self.R, kernel, self.DELAYS, f"r_{self.R:g}")


class GammaTwoRegimesFigure(BaseFigure):
    """Gamma kernel p = 3: a stability window at r = 1.8, a single onset at r = 4."""

    figure_id = "fig7"
    title = "Gamma kernel (p=3): two crossings at r=1.8, one at r=4"

    P = 3
    REGIMES = {
        1.8: {"tau_range": (1.0, 22.0), "points": 43, "delays": (2.0, 10.0, 21.0)},
        4.0: {"tau_range": (0.3, 3.0), "points": 28, "delays": (0.5, 1.5)},
    }

    def build(self):
        kernel = GammaKernel(self.P)
        curve = hopf_curve_dpos(kernel, self.K, self.D)
        self.write_hopf("hopf_curve", curve.points, kernel)
        thresholds = gamma_thresholds(self.K, self.D)
        self.bundle.summary["thresholds"] = {"r_lower": thresholds.r_lower, "r_upper": thresholds.r_upper}
        self.bundle.summary["asymptote_r"] = curve.asymptote_r()
        self.bundle.summary["hopf"] = {}
        for r, regime in self.REGIMES.items():
            label = f"r_{r:g}"
            self.bundle.summary["hopf"][label] = self.hopf_summary(r, kernel)
            self.sweep(f"bifurcation_{label}", r, kernel, regime["tau_range"], regime["points"])
            self.trajectories(r, kernel, regime["delays"], label)

"""
Figure presets that need no time integration: kernel shapes, the uniform-kernel
stability region across sigma and the gamma-kernel transform against the
crossing level.
"""
import math

import numpy as np

from model import DiracKernel, GammaKernel, UniformKernel, equilibrium, transforms
from stability import gamma_thresholds, hopf_curve_dpos

from .base_figure import BaseFigure


class KernelShapeFigure(BaseFigure):
    """Delay densities with unit mean delay."""

    figure_id = "fig1"
    title = "Delay kernel shapes"

    GAMMA_ORDERS = (1, 2, 6, 10)
    UNIFORM_SIGMAS = (0.5, 1.0, 1.5)
    S_MAX = 3.0
    SAMPLES = 601

    def build(self):
        s = np.linspace(0.0, self.S_MAX, self.SAMPLES)
        kernels = [UniformKernel(sigma) for sigma in self.UNIFORM_SIGMAS] + [GammaKernel(p) for p in self.GAMMA_ORDERS]
        header = ["s"] + [kernel.describe() for kernel in kernels]
        columns = [kernel.density(s, 1.0) for kernel in kernels]
        self.write_table("densities", header, zip(s.tolist(), *(column.tolist() for column in columns)))
        # The fixed delay is an atom: one marker row
        self.write_table("dirac", ["s", "mass"], [(1.0, 1.0)])
        self.bundle.summary["kernels"] = {
            kernel.describe(): {"mean": 1.0, "variance": kernel.variance(1.0)}
            for kernel in kernels + [DiracKernel()]
        }


class UniformRegionFigure(BaseFigure):
    """Hopf curves of the uniform kernel for several widths, and S'(omega)."""

    figure_id = "fig3"
    title = "Stability region of the uniform kernel for different sigma"

    SIGMAS = (0.2, 0.5, 1.0, 1.5, 1.9)
    OMEGA_SAMPLES = 629

    def build(self):
        curves = {}
        for sigma in self.SIGMAS:
            kernel = UniformKernel(sigma)
            curve = hopf_curve_dpos(kernel, self.K, self.D)
            self.write_hopf(f"hopf_sigma_{sigma:g}", curve.points, kernel)
            curves[f"{sigma:g}"] = {
                "points": len(curve.points),
                "asymptote_omega": curve.asymptotes,
                "asymptote_r": curve.asymptote_r(),
            }
        self.bundle.summary["curves"] = curves

        omegas = np.linspace(0.0, 2.0 * math.pi, self.OMEGA_SAMPLES)
        header = ["omega"] + [f"S_prime_sigma_{sigma:g}" for sigma in self.SIGMAS]
        columns = [transforms(UniformKernel(sigma)).S_prime(omegas) for sigma in self.SIGMAS]
        self.write_table("sine_derivative", header, zip(omegas.tolist(), *(column.tolist() for column in columns)))


class GammaTransformFigure(BaseFigure):
    """C(omega) of the gamma kernels and the crossing level K/n* - 1 for several r."""

    figure_id = "fig5"
    title = "Cosine transform of the gamma kernel against the crossing level"

    ORDERS = (1, 2, 3)
    GROWTH_RATES = (1.8, 4.0, 5.0)
    OMEGA_MAX = 12.0
    OMEGA_SAMPLES = 1201

    def build(self):
        omegas = np.linspace(0.0, self.OMEGA_MAX, self.OMEGA_SAMPLES)
        header = ["omega"]
        columns = []
        for p in self.ORDERS:
            ts = transforms(GammaKernel(p))
            header += [f"C_p{p}", f"S_p{p}"]
            columns += [ts.C(omegas), ts.S(omegas)]
        self.write_table("transforms", header, zip(omegas.tolist(), *(column.tolist() for column in columns)))

        rows = []
        for r in self.GROWTH_RATES:
            n_star = equilibrium(self.params(r))
            rows.append((r, n_star, self.K / n_star - 1.0))
        self.write_table("levels", ["r", "n_star", "level"], rows)

        thresholds = gamma_thresholds(self.K, self.D)
        self.bundle.summary["thresholds"] = {
            "r_star": thresholds.r_star, "r_lower": thresholds.r_lower, "r_upper": thresholds.r_upper,
        }
        self.bundle.summary["hopf"] = {
            f"p{p}_r{r:g}": self.hopf_summary(r, GammaKernel(p)) for p in self.ORDERS for r in self.GROWTH_RATES
        }

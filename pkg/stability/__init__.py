# Stability package: crossing frequencies, Hopf curves, verdicts and the gamma eigenvalue oracle
from .crossings import (
    CrossingRoot, D0Crossings, scan_roots, level_crossings, crossing_frequencies_d0,
    hopf_delay_d0, dirac_d0_hopf_delay, uniform_d0_hopf_delay, gamma_d0_threshold,
    gamma_d0_hopf_delay, closed_form_d0_hopf_delay, OMEGA_MAX
)
from .hopf_curve import (
    Crossing, HopfPoint, HopfCurve, GammaThresholds, hopf_points_at, hopf_curve_dpos,
    transversality_dpos, transversality_value, dtau_domega, tau_at_fixed_r,
    crossing_equation_residuals, characteristic_residual, gamma_thresholds,
    gamma_p2_omega_pm, dirac_dpos_hopf, stability_region
)
from .classifier import StabilityState, StabilityVerdict, classify, count_unstable_pairs
from .eigen_oracle import characteristic_polynomial, gamma_eigen_roots, gamma_eigen_oracle

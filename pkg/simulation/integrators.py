"""
Fixed-step fourth-order integrators for the logistic model with delayed feedback

    dn/dt = r n(t) [1 - F(t)/K] + D

where F(t) is n(t - tau) for the Dirac kernel, the window average of n for the
uniform kernel, and the gamma-weighted history integral for the gamma kernel.
"""
import logging
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from model import BaseKernel, DiracKernel, GammaKernel, ModelParams, UniformKernel, equilibrium
from utils.errors import NumericalError

from .history_buffer import HistoryBuffer

logger = logging.getLogger(__name__)

DEFAULT_T_END = 200.0
T_END_PER_DELAY = 40.0
STEP_PER_DELAY = 1e-3
STEP_FLOOR = 1e-4
# Largest allowed step as a fraction of the mean delay
MAX_STEP_FRACTION = 1.0 / 20.0
ODE_STEP = 1e-3
ODE_T_END = 50.0
TRANSIENT_FRACTION = 0.6
HISTORY_FRACTION = 0.8
AMPLITUDE_TOL = 1e-4
DIRECT_MAX_ORDER = 4
DIRECT_TAIL_MASS = 1e-10

# feedback(k, c, y): delayed term at time (k + c) h for a stage value y, buffer head at k
Feedback = Callable[[int, float, float], float]


@dataclass(frozen=True)
class SimConfig:
    """
    Integration settings. Fields left as None are filled by resolve().

    Args:
        step: Time step (> 0)
        t_end: Integration horizon
        transient: Length of the initial window discarded from extrema (< t_end)
        history_value: Constant history n0 for t <= 0 (> 0)
        amplitude_tol: Oscillation threshold relative to n*
        max_doublings: Horizon doublings allowed while the amplitude trend settles
        step_per_delay: Default step as a fraction of tau_m when step is None
    """

    step: Optional[float] = None
    t_end: Optional[float] = None
    transient: Optional[float] = None
    history_value: Optional[float] = None
    amplitude_tol: float = AMPLITUDE_TOL
    max_doublings: int = 3
    step_per_delay: float = STEP_PER_DELAY

    def resolve(self, tau_m: float, n_star: float) -> "SimConfig":
        """
        Fill defaults for a run at mean delay tau_m and validate the result.

        Raises:
            ValueError: On a non-positive step, horizon or history, or transient >= t_end
            NumericalError: If step >= tau_m/20 for a delayed run
        """
        delayed = tau_m > 0
        step = self.step
        if step is None:
            if delayed:
                step = max(self.step_per_delay * tau_m, STEP_FLOOR)
                # Tiny delays would violate the step bound with the floor alone
                step = min(step, tau_m * MAX_STEP_FRACTION / 2.0)
            else:
                step = ODE_STEP
        t_end = self.t_end
        if t_end is None:
            t_end = max(DEFAULT_T_END, T_END_PER_DELAY * tau_m) if delayed else ODE_T_END
        transient = self.transient if self.transient is not None else TRANSIENT_FRACTION * t_end
        history_value = self.history_value if self.history_value is not None else HISTORY_FRACTION * n_star

        if not (math.isfinite(step) and step > 0):
            raise ValueError(f"step must be > 0, got {step}")
        if not (math.isfinite(t_end) and t_end > 0):
            raise ValueError(f"t_end must be > 0, got {t_end}")
        if not 0 <= transient < t_end:
            raise ValueError(f"transient must lie in [0, t_end), got {transient} with t_end={t_end}")
        if not (math.isfinite(history_value) and history_value > 0):
            raise ValueError(f"history value must be > 0, got {history_value}")
        if not self.amplitude_tol > 0:
            raise ValueError(f"amplitude_tol must be > 0, got {self.amplitude_tol}")
        if delayed and step >= tau_m * MAX_STEP_FRACTION:
            raise NumericalError(f"step-size violation: step={step} must be < tau_m/20={tau_m * MAX_STEP_FRACTION}")
        return replace(self, step=float(step), t_end=float(t_end), transient=float(transient),
                       history_value=float(history_value))

    def doubled(self) -> "SimConfig":
        """Same settings with the horizon and transient doubled."""
        return replace(self, t_end=2.0 * self.t_end, transient=2.0 * self.transient)


@dataclass
class Trajectory:
    """Sampled solution n(t) together with the delayed feedback term F(t)."""

    times: np.ndarray
    values: np.ndarray
    delayed: np.ndarray
    tau_m: float
    kernel: str
    params: ModelParams
    config: SimConfig = field(repr=False)

    def __len__(self):
        return len(self.times)

    def window(self, start: Optional[float] = None):
        """Samples with t >= start (default: after the configured transient)."""
        start = self.config.transient if start is None else start
        mask = self.times >= start
        return self.times[mask], self.values[mask], self.delayed[mask]

    def extrema(self, start: Optional[float] = None):
        """(n_min, n_max) after the transient."""
        _, values, _ = self.window(start)
        return float(values.min()), float(values.max())

    def amplitude(self, start: Optional[float] = None) -> float:
        n_min, n_max = self.extrema(start)
        return n_max - n_min


def _rhs(params: ModelParams, n: float, feedback: float) -> float:
    return params.r * n * (1.0 - feedback / params.K) + params.D


def _check_state(value: float, t: float):
    if not math.isfinite(value):
        raise NumericalError(f"non-finite state n={value} at t={t:.6g}")
    if value <= 0.0:
        raise NumericalError(f"non-positive state n={value} at t={t:.6g}")


def _integrate_scalar(params: ModelParams, config: SimConfig, tau_m: float, label: str,
                      buffer: HistoryBuffer, feedback: Feedback) -> Trajectory:
    """Classic RK4 on the scalar equation; the buffer receives every accepted step."""
    h = config.step
    n_steps = int(round(config.t_end / h))
    times = np.arange(n_steps + 1, dtype=float) * h
    values = np.empty(n_steps + 1)
    delayed = np.empty(n_steps + 1)

    y = config.history_value
    F = feedback(0, 0.0, y)
    f1 = _rhs(params, y, F)
    buffer.set_head_derivative(f1)
    values[0] = y
    delayed[0] = F
    half = 0.5 * h
    logger.debug(f"Integrating {label}: tau_m={tau_m}, step={h}, steps={n_steps}, n0={y}")

    for k in range(n_steps):
        y2 = y + half * f1
        f2 = _rhs(params, y2, feedback(k, 0.5, y2))
        y3 = y + half * f2
        f3 = _rhs(params, y3, feedback(k, 0.5, y3))
        y4 = y + h * f3
        f4 = _rhs(params, y4, feedback(k, 1.0, y4))
        y = y + h * (f1 + 2.0 * f2 + 2.0 * f3 + f4) / 6.0
        _check_state(y, (k + 1) * h)

        F = feedback(k, 1.0, y)
        f1 = _rhs(params, y, F)
        buffer.push(y, f1)
        values[k + 1] = y
        delayed[k + 1] = F

    return Trajectory(times=times, values=values, delayed=delayed, tau_m=tau_m,
                      kernel=label, params=params, config=config)


def simulate_dirac(params: ModelParams, tau: float, config: SimConfig = None) -> Trajectory:
    """
    Integrate dn/dt = r n(t)[1 - n(t - tau)/K] + D with constant history n0.

    tau = 0 integrates the logistic ODE with inflow.

    Raises:
        ValueError: If tau < 0
        NumericalError: On a step-size violation or a non-finite/non-positive state
    """
    if not (math.isfinite(tau) and tau >= 0):
        raise ValueError(f"tau must be >= 0, got {tau}")
    config = (config or SimConfig()).resolve(tau, equilibrium(params))
    h = config.step

    if tau == 0:
        buffer = HistoryBuffer(h, h, config.history_value)
        return _integrate_scalar(params, config, 0.0, "ode", buffer, lambda k, c, y: y)

    buffer = HistoryBuffer(h, tau + 2.0 * h, config.history_value)
    value = buffer.value

    def feedback(k, c, y):
        return value((k + c) * h - tau)

    return _integrate_scalar(params, config, tau, "dirac", buffer, feedback)


def simulate_uniform(params: ModelParams, tau: float, sigma: float, config: SimConfig = None) -> Trajectory:
    """
    Integrate the model with a uniform kernel on [tau(1 - sigma/2), tau(1 + sigma/2)].

    The window average is the exact integral of the piecewise cubic Hermite
    interpolant of the history, differenced from its running antiderivative.

    Raises:
        ValueError: If sigma is outside (0, 2) or tau <= 0
        NumericalError: On a step-size violation or a non-finite/non-positive state
    """
    kernel = UniformKernel(sigma)
    if not (math.isfinite(tau) and tau > 0):
        raise ValueError(f"tau must be > 0, got {tau}")
    config = (config or SimConfig()).resolve(tau, equilibrium(params))
    h = config.step
    lower, upper = kernel.support(tau)
    width = upper - lower
    buffer = HistoryBuffer(h, upper + 2.0 * h, config.history_value)
    antiderivative = buffer.antiderivative

    def feedback(k, c, y):
        t = (k + c) * h
        return (antiderivative(t - lower) - antiderivative(t - upper)) / width

    return _integrate_scalar(params, config, tau, kernel.describe(), buffer, feedback)


def simulate_gamma_chain(params: ModelParams, p: int, tau_m: float, config: SimConfig = None) -> Trajectory:
    """
    Integrate the gamma-kernel model through its linear chain

        dn/dt = r n (1 - x_p/K) + D,  dx_i/dt = gamma (x_{i-1} - x_i),  x_0 = n,

    with gamma = p/tau_m and x_i(0) = n0 (the constant history).

    Returns:
        Trajectory: n(t) with x_p(t) as the delayed channel

    Raises:
        ValueError: If p < 1 or tau_m <= 0
        NumericalError: On a step-size violation or a non-finite/non-positive state
    """
    kernel = GammaKernel(p)
    if not (math.isfinite(tau_m) and tau_m > 0):
        raise ValueError(f"tau_m must be > 0, got {tau_m}")
    config = (config or SimConfig()).resolve(tau_m, equilibrium(params))
    h = config.step
    n_steps = int(round(config.t_end / h))
    rate = kernel.rate(tau_m)
    r, K, D = params.r, params.K, params.D

    def derivative(state):
        out = [r * state[0] * (1.0 - state[p] / K) + D]
        for i in range(1, p + 1):
            out.append(rate * (state[i - 1] - state[i]))
        return out

    def shifted(state, slope, scale):
        return [s + scale * d for s, d in zip(state, slope)]

    times = np.arange(n_steps + 1, dtype=float) * h
    values = np.empty(n_steps + 1)
    delayed = np.empty(n_steps + 1)
    state = [config.history_value] * (p + 1)
    values[0] = state[0]
    delayed[0] = state[p]
    logger.debug(f"Integrating gamma chain p={p}: tau_m={tau_m}, step={h}, steps={n_steps}")

    for k in range(n_steps):
        k1 = derivative(state)
        k2 = derivative(shifted(state, k1, 0.5 * h))
        k3 = derivative(shifted(state, k2, 0.5 * h))
        k4 = derivative(shifted(state, k3, h))
        state = [s + h * (a + 2.0 * b + 2.0 * c + d) / 6.0 for s, a, b, c, d in zip(state, k1, k2, k3, k4)]
        _check_state(state[0], (k + 1) * h)
        values[k + 1] = state[0]
        delayed[k + 1] = state[p]

    return Trajectory(times=times, values=values, delayed=delayed, tau_m=tau_m,
                      kernel=kernel.describe(), params=params, config=config)


def _direct_weights(kernel: GammaKernel, tau_m: float, h: float, count: int, c: float):
    """
    Corrected trapezoid weights for integral_0^smax n(t_k + c h - s) g(s) ds.

    Nodes are s = 0 (the stage value) and s_j = c h + (j - 1) h, j = 1..count,
    which hit the grid values n_k, n_{k-1}, ... The grid part carries the
    end correction (h^2/12) phi'(c h) with phi(s) = n(t_k + c h - s) g(s), which
    needs n_k and n'_k. Weights are normalized so a constant history is reproduced.

    Returns:
        tuple: (stage weight, grid weights oldest first, weight of n_k, weight of n'_k)
    """
    nodes = c * h + h * np.arange(count)
    density = kernel.density(nodes, tau_m)
    weights = h * density
    weights[0] = 0.5 * h * density[0] + 0.5 * c * h * density[0]
    weights[-1] = 0.5 * h * density[-1]
    stage = 0.5 * c * h * kernel.density(0.0, tau_m)
    value_weight = h * h / 12.0 * kernel.density_prime(c * h, tau_m)
    derivative_weight = -h * h / 12.0 * density[0]
    total = stage + weights.sum() + value_weight
    return stage / total, weights[::-1] / total, value_weight / total, derivative_weight / total


def simulate_gamma_direct(params: ModelParams, p: int, tau_m: float, config: SimConfig = None) -> Trajectory:
    """
    Integrate the gamma-kernel model by direct quadrature of the history integral.
    Oracle for simulate_gamma_chain; cost grows with the truncated support.

    Raises:
        ValueError: If p is outside [1, 4] or tau_m <= 0
        NumericalError: On a step-size violation or a non-finite/non-positive state
    """
    kernel = GammaKernel(p)
    if p > DIRECT_MAX_ORDER:
        raise ValueError(f"direct quadrature supports p <= {DIRECT_MAX_ORDER}, got p={p}")
    if not (math.isfinite(tau_m) and tau_m > 0):
        raise ValueError(f"tau_m must be > 0, got {tau_m}")
    config = (config or SimConfig()).resolve(tau_m, equilibrium(params))
    h = config.step
    _, s_max = kernel.support(tau_m, DIRECT_TAIL_MASS)
    count = int(math.ceil(s_max / h)) + 1
    buffer = HistoryBuffer(h, s_max + 2.0 * h, config.history_value, track_window=True)
    weights = {c: _direct_weights(kernel, tau_m, h, count, c) for c in (0.0, 0.5, 1.0)}
    window = buffer.window
    logger.debug(f"Direct gamma quadrature: p={p}, support={s_max:.4g}, nodes={count}")

    def feedback(k, c, y):
        stage, w, value_weight, derivative_weight = weights[c]
        return (stage * y + float(np.dot(w, window(count)))
                + value_weight * buffer.latest + derivative_weight * buffer.latest_derivative)

    return _integrate_scalar(params, config, tau_m, f"{kernel.describe()}:direct", buffer, feedback)


def simulate(params: ModelParams, kernel: BaseKernel, tau_m: float, config: SimConfig = None) -> Trajectory:
    """
    Dispatch to the integrator for the kernel family (gamma uses the linear chain).
    """
    if isinstance(kernel, DiracKernel):
        return simulate_dirac(params, tau_m, config)
    if isinstance(kernel, UniformKernel):
        if tau_m == 0:
            return simulate_dirac(params, 0.0, config)
        return simulate_uniform(params, tau_m, kernel.sigma, config)
    if isinstance(kernel, GammaKernel):
        if tau_m == 0:
            return simulate_dirac(params, 0.0, config)
        return simulate_gamma_chain(params, kernel.p, tau_m, config)
    raise ValueError(f"Unsupported kernel: {kernel!r}")

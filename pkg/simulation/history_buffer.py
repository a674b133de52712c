"""
Ring buffer holding the recent solution history of a scalar delay equation.

Each grid point t_k = k*h stores n_k, n'_k and the running integral
Q_k = integral_0^{t_k} n. Off-grid values use the cubic Hermite interpolant
on the panel containing t; integrals integrate that interpolant exactly.
For t <= 0 the history is the constant n0.
"""
import math

import numpy as np

from utils.errors import NumericalError


class HistoryBuffer:
    """
    Fixed-capacity history of a scalar solution on a uniform grid.

    Args:
        step: Grid spacing h
        max_lag: Largest lag that will be looked up
        history_value: Constant history n0 for t <= 0
        initial_derivative: n'(0+) of the solution
        track_window: Keep a contiguous numpy mirror for window() dot products
    """

    def __init__(self, step: float, max_lag: float, history_value: float,
                 initial_derivative: float = 0.0, track_window: bool = False):
        self.step = step
        self.history_value = history_value
        self.capacity = int(math.ceil(max_lag / step)) + 8
        self.head = 0
        self._values = [history_value] * self.capacity
        self._derivatives = [0.0] * self.capacity
        self._cumulative = [0.0] * self.capacity
        self._derivatives[0] = initial_derivative
        self._mirror = np.full(2 * self.capacity, history_value) if track_window else None

    # ------------------------------------------------------------------
    def _slot(self, k: int) -> int:
        if k > self.head or k <= self.head - self.capacity:
            raise NumericalError(f"history index {k} outside buffer (head={self.head}, capacity={self.capacity})")
        return k % self.capacity

    def push(self, value: float, derivative: float):
        """
        Append the next grid value n_{head+1} with its derivative.
        """
        h = self.step
        last = self.head % self.capacity
        k = self.head + 1
        slot = k % self.capacity
        increment = 0.5 * h * (self._values[last] + value) + h * h * (self._derivatives[last] - derivative) / 12.0
        self._cumulative[slot] = self._cumulative[last] + increment
        self._values[slot] = value
        self._derivatives[slot] = derivative
        if self._mirror is not None:
            self._mirror[slot] = value
            self._mirror[slot + self.capacity] = value
        self.head = k

    def set_head_derivative(self, derivative: float):
        """Replace n' at the newest grid point (used once the feedback term is known)."""
        self._derivatives[self.head % self.capacity] = derivative

    @property
    def latest(self) -> float:
        return self._values[self.head % self.capacity]

    @property
    def latest_derivative(self) -> float:
        return self._derivatives[self.head % self.capacity]

    # ------------------------------------------------------------------
    def _panel(self, t: float):
        """Panel index k with t in [t_k, t_{k+1}] and the local coordinate theta."""
        h = self.step
        k = int(math.floor(t / h))
        if k >= self.head:
            # Extrapolate with the newest panel
            k = self.head - 1
        if k < 0:
            k = 0
        return k, t / h - k

    def value(self, t: float) -> float:
        """Interpolated solution n(t)."""
        if t <= 0.0:
            return self.history_value
        if self.head == 0:
            return self.history_value + t * self._derivatives[0]
        k, theta = self._panel(t)
        a, b = self._slot(k), self._slot(k + 1)
        h = self.step
        t2 = theta * theta
        t3 = t2 * theta
        return ((2.0 * t3 - 3.0 * t2 + 1.0) * self._values[a]
                + (t3 - 2.0 * t2 + theta) * h * self._derivatives[a]
                + (-2.0 * t3 + 3.0 * t2) * self._values[b]
                + (t3 - t2) * h * self._derivatives[b])

    def antiderivative(self, t: float) -> float:
        """P(t) = integral_0^t n(s) ds (negative for t < 0)."""
        if t <= 0.0:
            return self.history_value * t
        if self.head == 0:
            return self.history_value * t + 0.5 * self._derivatives[0] * t * t
        k, theta = self._panel(t)
        a, b = self._slot(k), self._slot(k + 1)
        h = self.step
        t2 = theta * theta
        t3 = t2 * theta
        t4 = t3 * theta
        partial = h * (self._values[a] * (theta - t3 + 0.5 * t4)
                       + self._values[b] * (t3 - 0.5 * t4)
                       + h * self._derivatives[a] * (0.5 * t2 - 2.0 * t3 / 3.0 + 0.25 * t4)
                       + h * self._derivatives[b] * (-t3 / 3.0 + 0.25 * t4))
        return self._cumulative[a] + partial

    def integral(self, lower: float, upper: float) -> float:
        """Integral of n over [lower, upper]."""
        return self.antiderivative(upper) - self.antiderivative(lower)

    def window(self, count: int) -> np.ndarray:
        """
        The newest `count` grid values as a contiguous view, oldest first.

        Raises:
            NumericalError: If the buffer was built without a window mirror or count exceeds capacity
        """
        if self._mirror is None:
            raise NumericalError("history buffer was created without track_window")
        if count > self.capacity:
            raise NumericalError(f"window of {count} exceeds buffer capacity {self.capacity}")
        end = self.head % self.capacity + self.capacity + 1
        return self._mirror[end - count:end]

"""Classical fourth-order Runge-Kutta integration with cubic Hermite dense
output, for the autonomous profile equation f' = y(f) and the constant-curvature
directrix IVP."""

import bisect
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

__all__ = ["rk4_path", "HermitePath"]


@dataclass(frozen=True)
class HermitePath:
    """Piecewise-cubic Hermite interpolant through RK4 nodes.

    ts: node abscissae (strictly increasing); ys: values (n_nodes x dim);
    dys: slopes at the nodes (same shape). Interpolation error is O(step^4),
    matching the RK4 global error.
    """

    ts: np.ndarray
    ys: np.ndarray
    dys: np.ndarray
    truncated: bool = False

    @property
    def t0(self) -> float:
        return float(self.ts[0])

    @property
    def t1(self) -> float:
        return float(self.ts[-1])

    def __call__(self, t: float) -> np.ndarray:
        if not (self.ts[0] - 1e-12 <= t <= self.ts[-1] + 1e-12):
            raise DomainError(
                f"interpolant queried at {t} outside [{self.ts[0]}, {self.ts[-1]}]", t=t)
        t = min(max(t, float(self.ts[0])), float(self.ts[-1]))
        i = bisect.bisect_right(self.ts, t) - 1
        i = min(max(i, 0), len(self.ts) - 2)
        h = self.ts[i + 1] - self.ts[i]
        s = (t - self.ts[i]) / h
        h00 = (1 + 2 * s) * (1 - s) ** 2
        h10 = s * (1 - s) ** 2
        h01 = s * s * (3 - 2 * s)
        h11 = s * s * (s - 1)
        return (h00 * self.ys[i] + h10 * h * self.dys[i]
                + h01 * self.ys[i + 1] + h11 * h * self.dys[i + 1])


def rk4_path(rhs, t0: float, t1: float, y0, step: float, stop=None) -> HermitePath:
    """Integrate y' = rhs(y) (autonomous, vector-valued) from t0 to t1.

    stop(y) -> bool, when given, is checked on each tentative step's endpoint
    and midpoints; a True result truncates the path at the last good node.
    rhs may raise DomainError to signal leaving its domain, which also
    truncates.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    y0 = np.atleast_1d(np.asarray(y0, dtype=float))
    n = max(1, int(round((t1 - t0) / step)))
    h = (t1 - t0) / n
    ts = [t0]
    ys = [y0]
    dys = [np.atleast_1d(rhs(y0))]
    truncated = False
    y = y0
    for i in range(n):
        try:
            k1 = dys[-1]
            k2 = np.atleast_1d(rhs(y + 0.5 * h * k1))
            k3 = np.atleast_1d(rhs(y + 0.5 * h * k2))
            k4 = np.atleast_1d(rhs(y + h * k3))
            y_next = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
            if not np.all(np.isfinite(y_next)):
                truncated = True
                break
            if stop is not None and stop(y_next):
                truncated = True
                break
            dy_next = np.atleast_1d(rhs(y_next))
        except DomainError:
            truncated = True
            break
        y = y_next
        ts.append(t0 + (i + 1) * h)
        ys.append(y)
        dys.append(dy_next)
    if len(ts) < 2:
        raise DomainError("integration could not complete a single step from t0", t=t0)
    return HermitePath(np.array(ts), np.array(ys), np.array(dys), truncated=truncated)

"""Fixed-step RK4 (forward and backward) and composite Simpson quadrature.

All integrators work on uniform grids so that a forward state run and a
backward adjoint run share their nodes exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from satsir._types import BackwardField, Vector, VectorField
from satsir.errors import NumericalError, ParameterError, raise_if_invalid

# numpy 2 renamed trapz to trapezoid
_trapezoid = getattr(np, "trapezoid", None) or np.trapz


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid of ``n`` intervals on [t0, t1] (months)."""

    t0: float = 0.0
    t1: float = 20.0
    n: int = 2000

    def __post_init__(self) -> None:
        raise_if_invalid("TimeGrid", self.validate())

    def validate(self) -> list[str]:
        errors: list[str] = []
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n <= 0:
            errors.append(f"n must be a positive integer, got {self.n!r}")
        elif self.n % 2:
            errors.append(
                f"n must be even (Simpson's 1/3 rule needs an even interval count), got {self.n}"
            )
        if not (math.isfinite(self.t0) and math.isfinite(self.t1)):
            errors.append(f"t0 and t1 must be finite, got {self.t0!r}, {self.t1!r}")
        elif self.t1 <= self.t0:
            errors.append(f"t1 must exceed t0, got t0={self.t0!r}, t1={self.t1!r}")
        return errors

    @property
    def step(self) -> float:
        return (self.t1 - self.t0) / self.n

    @property
    def times(self) -> Vector:
        return np.linspace(self.t0, self.t1, self.n + 1)

    def node_time(self, k: int) -> float:
        return self.t0 + k * self.step


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Samples of a vector quantity at every node of a grid.

    ``samples`` has shape ``(grid.n + 1, k)``; row ``i`` belongs to node ``i``.
    """

    grid: TimeGrid
    samples: npt.NDArray[np.float64]

    def __post_init__(self) -> None:
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.ndim == 1:
            samples = samples.reshape(-1, 1)
        if samples.ndim != 2 or samples.shape[0] != self.grid.n + 1:
            raise ParameterError(
                f"Trajectory needs {self.grid.n + 1} samples for n={self.grid.n}, "
                f"got shape {samples.shape}"
            )
        object.__setattr__(self, "samples", samples)

    @property
    def times(self) -> Vector:
        return self.grid.times

    @property
    def width(self) -> int:
        return self.samples.shape[1]

    def column(self, i: int) -> Vector:
        return self.samples[:, i]

    def node(self, k: int) -> Vector:
        return self.samples[k]

    def midpoint(self, k: int) -> Vector:
        """Linear interpolation halfway between nodes k and k + 1."""
        return 0.5 * (self.samples[k] + self.samples[k + 1])

    @property
    def final(self) -> Vector:
        return self.samples[-1]


def _check_finite(y: Vector, k: int, direction: str) -> None:
    if not np.all(np.isfinite(y)):
        raise NumericalError(
            f"Non-finite value in {direction} integration at node {k}: {y!r}",
            node=k,
        )


def rk4_integrate_forward(f: VectorField, y0: npt.ArrayLike, grid: TimeGrid) -> Trajectory:
    """Classical RK4 from t0 to t1; sample 0 is ``y0``."""
    h = grid.step
    y = np.array(y0, dtype=np.float64).reshape(-1)
    out = np.empty((grid.n + 1, y.size))
    _check_finite(y, 0, "forward")
    out[0] = y
    for k in range(grid.n):
        t = grid.node_time(k)
        k1 = np.asarray(f(t, y), dtype=np.float64)
        k2 = np.asarray(f(t + 0.5 * h, y + 0.5 * h * k1), dtype=np.float64)
        k3 = np.asarray(f(t + 0.5 * h, y + 0.5 * h * k2), dtype=np.float64)
        k4 = np.asarray(f(t + h, y + h * k3), dtype=np.float64)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        _check_finite(y, k + 1, "forward")
        out[k + 1] = y
    return Trajectory(grid, out)


def rk4_integrate_backward(
    g: BackwardField,
    lam_T: npt.ArrayLike,
    grid: TimeGrid,
    context: Trajectory,
    controls: Trajectory | None = None,
) -> Trajectory:
    """Classical RK4 from t1 down to t0 with step -h; sample n is ``lam_T``.

    ``g(t, lam, x, u)`` receives the context state ``x`` (and the controls
    ``u`` when given) at the stage time: node values at the ends of a step,
    the linear interpolant halfway.
    """
    if context.grid != grid or (controls is not None and controls.grid != grid):
        raise ParameterError("Backward integration context must share the integration grid")
    h = grid.step
    lam = np.array(lam_T, dtype=np.float64).reshape(-1)
    out = np.empty((grid.n + 1, lam.size))
    _check_finite(lam, grid.n, "backward")
    out[grid.n] = lam

    def _u(k: int) -> Vector | None:
        return None if controls is None else controls.node(k)

    def _u_mid(k: int) -> Vector | None:
        return None if controls is None else controls.midpoint(k)

    for k in range(grid.n, 0, -1):
        t = grid.node_time(k)
        x_hi, x_mid, x_lo = context.node(k), context.midpoint(k - 1), context.node(k - 1)
        u_hi, u_mid, u_lo = _u(k), _u_mid(k - 1), _u(k - 1)
        k1 = np.asarray(g(t, lam, x_hi, u_hi), dtype=np.float64)
        k2 = np.asarray(g(t - 0.5 * h, lam - 0.5 * h * k1, x_mid, u_mid), dtype=np.float64)
        k3 = np.asarray(g(t - 0.5 * h, lam - 0.5 * h * k2, x_mid, u_mid), dtype=np.float64)
        k4 = np.asarray(g(t - h, lam - h * k3, x_lo, u_lo), dtype=np.float64)
        lam = lam - (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        _check_finite(lam, k - 1, "backward")
        out[k - 1] = lam
    return Trajectory(grid, out)


def simpson_integral(samples: npt.ArrayLike, h: float) -> float:
    """Composite Simpson's 1/3 rule over equally spaced samples."""
    y = np.asarray(samples, dtype=np.float64)
    if y.ndim != 1:
        raise ParameterError(f"Simpson's rule needs a 1-D sample list, got shape {y.shape}")
    if y.size < 3 or y.size % 2 == 0:
        raise ParameterError(
            f"Simpson's 1/3 rule needs an odd sample count >= 3 (even interval count), got {y.size}"
        )
    total = y[0] + y[-1] + 4.0 * np.sum(y[1:-1:2]) + 2.0 * np.sum(y[2:-1:2])
    return float(total * h / 3.0)


def trapezoid_integral(samples: npt.ArrayLike, h: float) -> float:
    """Composite trapezoid rule; cross-check for Simpson results."""
    y = np.asarray(samples, dtype=np.float64)
    if y.ndim != 1 or y.size < 2:
        raise ParameterError(f"Trapezoid rule needs at least two samples, got shape {y.shape}")
    return float(_trapezoid(y, dx=h))

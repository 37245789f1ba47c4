from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from satsir._types import Vector
from satsir.errors import ParameterError
from satsir.numerics import TimeGrid, Trajectory
from satsir.params import ControlPair


@dataclass(frozen=True, eq=False)
class ControlSchedule:
    """Node values of (u1, u2) on a time grid, linear in between."""

    grid: TimeGrid
    u1: npt.NDArray[np.float64]
    u2: npt.NDArray[np.float64]

    def __post_init__(self) -> None:
        size = self.grid.n + 1
        for name in ("u1", "u2"):
            values = np.array(getattr(self, name), dtype=np.float64).reshape(-1)
            if values.size != size:
                raise ParameterError(
                    f"ControlSchedule.{name} needs {size} node values, got {values.size}"
                )
            if not np.all(np.isfinite(values)) or values.min() < 0.0 or values.max() > 1.0:
                raise ParameterError(f"ControlSchedule.{name} values must lie in [0, 1]")
            values.setflags(write=False)
            object.__setattr__(self, name, values)

    @classmethod
    def zeros(cls, grid: TimeGrid) -> ControlSchedule:
        return cls.constant(grid, ControlPair())

    @classmethod
    def constant(cls, grid: TimeGrid, u: ControlPair) -> ControlSchedule:
        size = grid.n + 1
        return cls(grid, np.full(size, float(u.u1)), np.full(size, float(u.u2)))

    def node(self, k: int) -> ControlPair:
        return ControlPair(float(self.u1[k]), float(self.u2[k]))

    def at(self, t: float) -> tuple[float, float]:
        """(u1, u2) at time t by linear interpolation between nodes."""
        grid = self.grid
        pos = (t - grid.t0) / grid.step
        k = min(max(int(math.floor(pos)), 0), grid.n - 1)
        frac = min(max(pos - k, 0.0), 1.0)
        u1 = self.u1[k] + frac * (self.u1[k + 1] - self.u1[k])
        u2 = self.u2[k] + frac * (self.u2[k + 1] - self.u2[k])
        return float(u1), float(u2)

    def as_trajectory(self) -> Trajectory:
        return Trajectory(self.grid, np.column_stack([self.u1, self.u2]))

    def stacked(self) -> Vector:
        return np.concatenate([self.u1, self.u2])

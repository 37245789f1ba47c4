from __future__ import annotations

import math
from typing import Callable

import numpy as np
import numpy.typing as npt

Vector = npt.NDArray[np.float64]

# f(t, y) -> dy/dt
VectorField = Callable[[float, Vector], Vector]
# g(t, lam, x, u) -> dlam/dt, with x and u interpolated from a context run
BackwardField = Callable[[float, Vector, Vector, Vector | None], Vector]


def clamp(value: float, lo: float = 0.0, hi: float = 1.0) -> float:
    """Clamp a scalar into [lo, hi]."""
    return max(lo, min(value, hi))


def is_finite_number(value: object) -> bool:
    """True for real, finite ints/floats (bools excluded)."""
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        return False
    return math.isfinite(value)


def relative_l1_change(new: Vector, old: Vector) -> float:
    """||new - old||_1 / ||new||_1, with 0/0 treated as no change."""
    diff = float(np.sum(np.abs(new - old)))
    norm = float(np.sum(np.abs(new)))
    if norm == 0.0:
        return 0.0 if diff == 0.0 else math.inf
    return diff / norm

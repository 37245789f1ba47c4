"""Vector field of the SIR model with saturated incidence and treatment.

    dS/dt = A - beta S I/(1 + alpha I) - d S - u1 S
    dI/dt = beta S I/(1 + alpha I) - (d + delta + gamma) I - r u2 I/(1 + b u2 I)
    dR/dt = r u2 I/(1 + b u2 I) + gamma I + u1 S - d R
"""
from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from satsir._types import Vector, VectorField
from satsir.errors import ParameterError
from satsir.params import ControlPair, ModelParams, SirState

if TYPE_CHECKING:
    from satsir.schedule import ControlSchedule


def incidence_rate(S: float, I: float, p: ModelParams) -> float:
    """Saturated incidence beta S I / (1 + alpha I)."""
    if S < 0 or I < 0:
        raise ParameterError(f"incidence_rate needs S, I >= 0, got S={S!r}, I={I!r}")
    return p.beta * S * I / (1.0 + p.alpha * I)


def treatment_rate(I: float, u2: float, p: ModelParams) -> float:
    """Saturated treatment r u2 I / (1 + b u2 I); bounded by r/b when b u2 > 0."""
    if I < 0:
        raise ParameterError(f"treatment_rate needs I >= 0, got {I!r}")
    if not 0.0 <= u2 <= 1.0:
        raise ParameterError(f"treatment_rate needs u2 in [0, 1], got {u2!r}")
    return p.r * u2 * I / (1.0 + p.b * u2 * I)


def _rhs(
    S: float, I: float, R: float, u1: float, u2: float, p: ModelParams
) -> tuple[float, float, float]:
    # unchecked; callers guarantee admissible inputs
    infection = p.beta * S * I / (1.0 + p.alpha * I)
    treated = p.r * u2 * I / (1.0 + p.b * u2 * I)
    dS = p.A - infection - p.d * S - u1 * S
    dI = infection - p.removal * I - treated
    dR = treated + p.gamma * I + u1 * S - p.d * R
    return dS, dI, dR


def state_rhs(x: SirState, u: ControlPair, p: ModelParams) -> tuple[float, float, float]:
    """Right-hand sides (dS/dt, dI/dt, dR/dt) of the model."""
    return _rhs(x.S, x.I, x.R, u.u1, u.u2, p)


def population_rhs(x: SirState, p: ModelParams) -> float:
    """dN/dt = A - d N - delta I for N = S + I + R."""
    return p.A - p.d * x.total - p.delta * x.I


def invariant_region_contains(x: SirState, p: ModelParams) -> bool:
    """Whether x lies in the positively invariant region S + I + R <= A/d."""
    if p.d <= 0:
        raise ParameterError("invariant region bound A/d is undefined for d = 0")
    return x.total <= p.carrying_bound


def state_field(p: ModelParams, schedule: ControlSchedule) -> VectorField:
    """f(t, y) for the integrators, controls interpolated from ``schedule``."""

    def f(t: float, y: Vector) -> Vector:
        u1, u2 = schedule.at(t)
        return np.array(_rhs(y[0], y[1], y[2], u1, u2, p))

    return f

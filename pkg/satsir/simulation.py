"""Forward runs of the controlled model and the quantities read off them."""
from __future__ import annotations

import logging

from satsir.dynamics import state_field
from satsir.errors import ParameterError
from satsir.numerics import TimeGrid, Trajectory, rk4_integrate_forward, simpson_integral
from satsir.params import ModelParams, SirState
from satsir.schedule import ControlSchedule

logger = logging.getLogger(__name__)

STATE_COLUMNS = ("S", "I", "R")


def simulate(
    p: ModelParams,
    x0: SirState,
    grid: TimeGrid,
    schedule: ControlSchedule | None = None,
) -> Trajectory:
    """Integrate the model from ``x0`` over ``grid``; no schedule means u = 0."""
    if schedule is None:
        schedule = ControlSchedule.zeros(grid)
    elif schedule.grid != grid:
        raise ParameterError("control schedule grid does not match the simulation grid")
    states = rk4_integrate_forward(state_field(p, schedule), x0.as_tuple(), grid)
    logger.debug(
        "simulated %d steps to t=%g, final state %s", grid.n, grid.t1, states.final.tolist()
    )
    return states


def cumulative_infected(states: Trajectory) -> float:
    """Simpson integral of I over the horizon (individuals x months)."""
    if states.width != len(STATE_COLUMNS):
        raise ParameterError(f"expected an (S, I, R) trajectory, got width {states.width}")
    return simpson_integral(states.column(1), states.grid.step)


def efficiency_index(a_controlled: float, a_uncontrolled: float) -> float:
    """Percentage reduction of cumulative infected relative to the baseline."""
    if a_uncontrolled <= 0:
        raise ParameterError(
            f"efficiency index needs a positive baseline, got {a_uncontrolled!r}"
        )
    return (1.0 - a_controlled / a_uncontrolled) * 100.0

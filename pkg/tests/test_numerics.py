"""Tests for numerics and schedule modules."""
import math

import numpy as np
import pytest

from satsir.errors import NumericalError, ParameterError
from satsir.numerics import (
    TimeGrid,
    Trajectory,
    rk4_integrate_backward,
    rk4_integrate_forward,
    simpson_integral,
    trapezoid_integral,
)
from satsir.params import ControlPair
from satsir.schedule import ControlSchedule


def _decay(t, y):
    return -y


def _zero_context(grid, width=1):
    return Trajectory(grid, np.zeros((grid.n + 1, width)))


# ── TimeGrid / Trajectory ───────────────────────────────────────────


def test_time_grid_defaults():
    grid = TimeGrid()
    assert (grid.t0, grid.t1, grid.n) == (0.0, 20.0, 2000)
    assert grid.step == pytest.approx(0.01)
    assert grid.times[-1] == 20.0
    assert len(grid.times) == 2001


def test_time_grid_rejects_odd_n():
    with pytest.raises(ParameterError, match="Simpson"):
        TimeGrid(0.0, 1.0, 11)


def test_time_grid_rejects_bad_span_and_n():
    with pytest.raises(ParameterError, match="t1 must exceed t0"):
        TimeGrid(1.0, 1.0, 10)
    with pytest.raises(ParameterError, match="positive integer"):
        TimeGrid(0.0, 1.0, 0)
    with pytest.raises(ParameterError, match="positive integer"):
        TimeGrid(0.0, 1.0, 10.0)


def test_trajectory_shape_checks():
    grid = TimeGrid(0.0, 1.0, 4)
    traj = Trajectory(grid, np.arange(5.0))
    assert traj.width == 1
    assert traj.column(0)[-1] == 4.0
    assert traj.midpoint(1)[0] == pytest.approx(1.5)
    with pytest.raises(ParameterError, match="needs 5 samples"):
        Trajectory(grid, np.zeros(4))


# ── Forward RK4 ─────────────────────────────────────────────────────


def test_rk4_exponential_decay():
    traj = rk4_integrate_forward(_decay, [1.0], TimeGrid(0.0, 1.0, 100))
    assert traj.final[0] == pytest.approx(math.exp(-1.0), abs=1e-9)
    assert traj.node(0)[0] == 1.0


def test_rk4_zero_field_is_constant():
    traj = rk4_integrate_forward(lambda t, y: np.zeros_like(y), [2.0, -1.0], TimeGrid(0.0, 5.0, 10))
    assert np.all(traj.column(0) == 2.0)
    assert np.all(traj.column(1) == -1.0)


def test_rk4_exact_on_cubic_quadrature():
    traj = rk4_integrate_forward(lambda t, y: np.array([3.0 * t * t]), [0.0], TimeGrid(0.0, 2.0, 10))
    assert traj.final[0] == pytest.approx(8.0, abs=1e-12)


def test_rk4_fourth_order_convergence():
    exact = math.exp(-1.0)
    errors = [
        abs(rk4_integrate_forward(_decay, [1.0], TimeGrid(0.0, 1.0, n)).final[0] - exact)
        for n in (10, 20)
    ]
    assert errors[0] / errors[1] == pytest.approx(16.0, abs=2.0)


def test_rk4_reports_failing_node():
    def blow_up(t, y):
        return np.array([np.inf]) if t > 0.25 else np.zeros(1)

    with pytest.raises(NumericalError, match="node") as info:
        rk4_integrate_forward(blow_up, [1.0], TimeGrid(0.0, 1.0, 10))
    assert info.value.node == 3


# ── Backward RK4 ────────────────────────────────────────────────────


def test_backward_zero_field():
    grid = TimeGrid(0.0, 1.0, 10)
    traj = rk4_integrate_backward(
        lambda t, lam, x, u: np.zeros_like(lam), [0.0, 0.0], grid, _zero_context(grid)
    )
    assert np.all(traj.samples == 0.0)


def test_backward_growth_closed_form():
    grid = TimeGrid(0.0, 1.0, 100)
    traj = rk4_integrate_backward(lambda t, lam, x, u: lam, [1.0], grid, _zero_context(grid))
    assert traj.final[0] == 1.0
    assert traj.node(0)[0] == pytest.approx(math.exp(-1.0), abs=1e-9)


def test_backward_reverses_forward_linear_system():
    M = np.array([[-0.5, 1.0], [-1.0, -0.2]])
    grid = TimeGrid(0.0, 1.0, 1000)
    y0 = np.array([1.0, 2.0])
    forward = rk4_integrate_forward(lambda t, y: M @ y, y0, grid)
    back = rk4_integrate_backward(lambda t, lam, x, u: M @ lam, forward.final, grid, forward)
    assert np.max(np.abs(back.node(0) - y0)) < 1e-8


def test_backward_interpolates_context_at_half_steps():
    grid = TimeGrid(0.0, 1.0, 2)
    context = Trajectory(grid, np.array([0.0, 1.0, 2.0]))
    seen = []

    def record(t, lam, x, u):
        seen.append((t, float(x[0])))
        return np.zeros_like(lam)

    rk4_integrate_backward(record, [0.0], grid, context)
    assert seen[:4] == [(1.0, 2.0), (0.75, 1.5), (0.75, 1.5), (0.5, 1.0)]


def test_backward_rejects_grid_mismatch():
    with pytest.raises(ParameterError, match="share the integration grid"):
        rk4_integrate_backward(
            lambda t, lam, x, u: lam,
            [1.0],
            TimeGrid(0.0, 1.0, 10),
            _zero_context(TimeGrid(0.0, 1.0, 20)),
        )


# ── Quadrature ──────────────────────────────────────────────────────


def test_simpson_exact_on_polynomials():
    for n in (2, 6, 40):
        t = np.linspace(0.0, 2.0, n + 1)
        assert simpson_integral(t**2, 2.0 / n) == pytest.approx(8.0 / 3.0, abs=1e-12)
        assert simpson_integral(t**3 - t, 2.0 / n) == pytest.approx(2.0, abs=1e-12)


def test_simpson_constant_and_sine():
    assert simpson_integral(np.full(2001, 3.0), 0.01) == pytest.approx(60.0, abs=1e-12)
    t = np.linspace(0.0, math.pi, 101)
    assert simpson_integral(np.sin(t), math.pi / 100) == pytest.approx(2.0, abs=1e-7)


def test_simpson_symmetric_reversal():
    t = np.linspace(-1.0, 1.0, 51)
    y = np.cos(3 * t) + t**2
    assert simpson_integral(y, 0.04) == pytest.approx(simpson_integral(y[::-1], 0.04), abs=1e-14)


def test_simpson_rejects_even_sample_count():
    with pytest.raises(ParameterError, match="odd sample count"):
        simpson_integral(np.ones(4), 0.1)


def test_trapezoid_agrees_on_smooth_integrand():
    t = np.linspace(0.0, 1.0, 2001)
    assert trapezoid_integral(np.exp(t), 1 / 2000) == pytest.approx(math.e - 1, rel=1e-6)


def test_trapezoid_exact_on_linear_samples():
    y = 3.0 + 2.0 * np.linspace(0.0, 2.0, 11)
    assert trapezoid_integral(y, 0.2) == pytest.approx(10.0, abs=1e-12)
    with pytest.raises(ParameterError, match="at least two"):
        trapezoid_integral([1.0], 0.1)


# ── ControlSchedule ─────────────────────────────────────────────────


def test_schedule_constant_and_node():
    grid = TimeGrid(0.0, 20.0, 20)
    sched = ControlSchedule.constant(grid, ControlPair(0.5, 0.25))
    assert sched.node(7) == ControlPair(0.5, 0.25)
    assert sched.at(13.7) == pytest.approx((0.5, 0.25))
    assert ControlSchedule.zeros(grid).stacked().sum() == 0.0


def test_schedule_interpolates_linearly():
    grid = TimeGrid(0.0, 2.0, 2)
    sched = ControlSchedule(grid, np.array([0.0, 1.0, 0.0]), np.array([1.0, 0.5, 0.0]))
    assert sched.at(0.5) == pytest.approx((0.5, 0.75))
    assert sched.at(1.5) == pytest.approx((0.5, 0.25))
    assert sched.at(2.0) == pytest.approx((0.0, 0.0))


def test_schedule_validation():
    grid = TimeGrid(0.0, 1.0, 2)
    with pytest.raises(ParameterError, match="needs 3 node values"):
        ControlSchedule(grid, np.zeros(2), np.zeros(3))
    with pytest.raises(ParameterError, match=r"u2 values must lie in \[0, 1\]"):
        ControlSchedule(grid, np.zeros(3), np.array([0.0, 1.2, 0.0]))


def test_schedule_arrays_are_read_only():
    sched = ControlSchedule.zeros(TimeGrid(0.0, 1.0, 2))
    with pytest.raises(ValueError):
        sched.u1[0] = 0.5

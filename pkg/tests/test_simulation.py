"""Tests for simulation module."""
import numpy as np
import pytest

from satsir.equilibria import disease_free_equilibrium
from satsir.errors import ParameterError
from satsir.numerics import TimeGrid, Trajectory, trapezoid_integral
from satsir.params import ControlPair, ModelParams, SirState
from satsir.schedule import ControlSchedule
from satsir.simulation import cumulative_infected, efficiency_index, simulate

X0 = SirState(50.0, 4.0, 0.01)


def _table2_run(grid=None, u=None):
    grid = grid or TimeGrid()
    schedule = None if u is None else ControlSchedule.constant(grid, u)
    return simulate(ModelParams.table2(), X0, grid, schedule)


def test_uncontrolled_baseline_cumulative_infected():
    states = _table2_run()
    assert states.node(0).tolist() == [50.0, 4.0, 0.01]
    assert cumulative_infected(states) == pytest.approx(1933.9, rel=0.02)


def test_simpson_and_trapezoid_agree_on_baseline():
    states = _table2_run()
    simpson = cumulative_infected(states)
    trapezoid = trapezoid_integral(states.column(1), states.grid.step)
    assert simpson == pytest.approx(trapezoid, rel=5e-4)


def test_cumulative_infected_constant():
    grid = TimeGrid(0.0, 20.0, 40)
    samples = np.tile([10.0, 3.0, 1.0], (41, 1))
    assert cumulative_infected(Trajectory(grid, samples)) == pytest.approx(60.0)


def test_cumulative_infected_needs_sir_columns():
    grid = TimeGrid(0.0, 1.0, 2)
    with pytest.raises(ParameterError, match="width"):
        cumulative_infected(Trajectory(grid, np.zeros((3, 2))))


def test_efficiency_index_examples():
    assert efficiency_index(1933.9, 1933.9) == 0.0
    assert efficiency_index(0.0, 1933.9) == 100.0
    assert efficiency_index(410.2195, 1933.9) == pytest.approx(78.79, abs=1e-2)


def test_efficiency_index_rejects_zero_baseline():
    with pytest.raises(ParameterError, match="positive baseline"):
        efficiency_index(1.0, 0.0)


def test_simulation_at_dfe_is_stationary():
    p = ModelParams.figure1()
    u = ControlPair(0.5, 0.5)
    dfe = disease_free_equilibrium(p, u.u1)
    grid = TimeGrid(0.0, 20.0, 200)
    states = simulate(p, dfe, grid, ControlSchedule.constant(grid, u))
    for i, value in enumerate(dfe.as_tuple()):
        assert np.allclose(states.column(i), value, rtol=1e-12, atol=1e-12)


def test_controlled_run_stays_in_invariant_region():
    p = ModelParams.table2()
    states = _table2_run(u=ControlPair(0.5, 0.5))
    totals = states.samples.sum(axis=1)
    assert np.all(totals <= p.carrying_bound * (1 + 1e-6))


def test_constant_controls_reduce_infection():
    assert cumulative_infected(_table2_run(u=ControlPair(0.5, 0.5))) < cumulative_infected(_table2_run())


def test_simulate_rejects_foreign_schedule():
    schedule = ControlSchedule.zeros(TimeGrid(0.0, 20.0, 100))
    with pytest.raises(ParameterError, match="grid"):
        simulate(ModelParams.table2(), X0, TimeGrid(0.0, 20.0, 200), schedule)

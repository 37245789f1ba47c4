"""Tests for strategy, report and formatting modules."""
import pytest

from satsir.equilibria import Stability, bifurcation_scan
from satsir.export import equilibrium_report_dict
from satsir.formatting import (
    format_efficiency_report,
    format_equilibrium_report,
    format_scan,
    format_strategy_report,
)
from satsir.numerics import TimeGrid
from satsir.optctl import CostWeights, OcOptions
from satsir.params import ControlPair, ModelParams, SirState
from satsir.report import build_equilibrium_report, efficiency_table, run_strategy
from satsir.strategy import Strategy

X0 = SirState(50.0, 4.0, 0.01)


@pytest.fixture(scope="module")
def table2_efficiency():
    return efficiency_table(ModelParams.table2(), CostWeights.table2(), X0, TimeGrid(), OcOptions())


# ── Strategy ────────────────────────────────────────────────────────


def test_strategy_channels():
    assert Strategy.NONE.active_controls == ()
    assert Strategy.STR1.active_controls == ("u1",)
    assert Strategy.STR2.active_controls == ("u2",)
    assert Strategy.BOTH.active_controls == ("u1", "u2")
    assert "vaccination" in Strategy.STR1.describe()


def test_strategy_parse():
    assert Strategy.parse("STR2") is Strategy.STR2
    with pytest.raises(ValueError, match="unknown strategy"):
        Strategy.parse("str3")


# ── Efficiency ──────────────────────────────────────────────────────


def test_efficiency_table_reproduces_strategy_ranking(table2_efficiency):
    report = table2_efficiency
    assert report.baseline == pytest.approx(1933.9, rel=0.02)
    assert report.converged

    none = report.row(Strategy.NONE)
    str1 = report.row(Strategy.STR1)
    str2 = report.row(Strategy.STR2)
    both = report.row(Strategy.BOTH)
    assert none.efficiency == 0.0
    assert str1.efficiency == pytest.approx(78.79, abs=5.0)
    assert str2.efficiency == pytest.approx(7.56, abs=3.0)
    assert str1.efficiency > str2.efficiency
    assert both.cumulative_infected <= report.baseline
    assert report.best.strategy in (Strategy.STR1, Strategy.BOTH)


def test_efficiency_report_text(table2_efficiency):
    text = format_efficiency_report(table2_efficiency)
    assert "SatSIR Efficiency" in text
    assert "STR-1 (vaccination only)" in text
    assert "BEST:" in text


def test_run_strategy_computes_baseline_when_missing():
    grid = TimeGrid(0.0, 20.0, 200)
    report = run_strategy(Strategy.NONE, ModelParams.table2(), CostWeights.table2(), X0, grid)
    assert report.efficiency == 0.0
    assert report.cumulative_infected == report.baseline
    text = format_strategy_report(report)
    assert "Efficiency index: 0.00%" in text
    assert "converged" in text


# ── Equilibrium report ──────────────────────────────────────────────


def test_equilibrium_report_figure1():
    p = ModelParams.figure1()
    u = ControlPair(0.5, 0.5)
    report = build_equilibrium_report(p, u)
    assert report.r0 == pytest.approx(0.98, abs=1e-3)
    assert report.backward.holds
    assert report.slope_at_one == pytest.approx(-4.778, abs=1e-3)
    assert report.r0_star is not None and report.r0_star < report.r0
    assert [e.point.stability for e in report.endemic] == [
        Stability.UNSTABLE,
        Stability.ASYMPTOTICALLY_STABLE,
    ]
    assert report.transcritical.admissible
    assert report.transcritical.u2 == pytest.approx(0.485, abs=1e-3)

    assert not report.endemic_condition

    text = format_equilibrium_report(report)
    assert "Backward condition: holds" in text
    assert "beta >= max(r b u2^2, r alpha u2): fails" in text
    assert "R0*" in text


def test_equilibrium_report_table2():
    report = build_equilibrium_report(ModelParams.table2(), ControlPair(0.5, 0.5))
    assert report.dfe_stability.stability is Stability.UNSTABLE
    assert len(report.endemic) == 1
    assert report.transcritical.u2 == pytest.approx(47.7932, abs=1e-4)
    assert report.r0_star is None
    assert report.endemic_condition
    assert equilibrium_report_dict(report)["endemic_stability_condition"] is True
    assert "outside [0, 1]" in format_equilibrium_report(report)


def test_scan_text_lists_every_grid_point():
    samples = bifurcation_scan(ModelParams.figure1(), ControlPair(0.5, 0.5), [0.9, 0.98, 1.05])
    lines = format_scan(samples).splitlines()
    assert len(lines) == 2 + 3
    assert "unstable" in lines[3]

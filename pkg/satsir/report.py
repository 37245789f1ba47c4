from __future__ import annotations

import logging
from dataclasses import dataclass, field

from satsir.equilibria import (
    BackwardBifurcation,
    DfeStability,
    EquilibriumPoint,
    TranscriticalThreshold,
    backward_bifurcation_condition,
    basic_reproduction_number,
    dfe_stability,
    disease_free_equilibrium,
    endemic_eigenvalues,
    endemic_equilibria,
    endemic_stability_condition,
    find_r0_star,
    slope_dI_dR0_at_one,
    transcritical_u2_threshold,
)
from satsir.errors import NumericalError
from satsir.numerics import TimeGrid, Trajectory
from satsir.optctl import CostWeights, OcOptions, OcSolution, fbs_solve
from satsir.params import ControlPair, ModelParams, SirState
from satsir.simulation import cumulative_infected, efficiency_index, simulate
from satsir.strategy import Strategy

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class StrategyReport:
    """Outcome of one control strategy against the uncontrolled baseline."""

    strategy: Strategy
    solution: OcSolution
    cumulative_infected: float
    baseline: float
    efficiency: float

    @property
    def converged(self) -> bool:
        return self.solution.converged


@dataclass(frozen=True, eq=False)
class EfficiencyReport:
    baseline: float
    baseline_states: Trajectory
    rows: list[StrategyReport] = field(default_factory=list)

    def row(self, strategy: Strategy) -> StrategyReport | None:
        for r in self.rows:
            if r.strategy is strategy:
                return r
        return None

    @property
    def best(self) -> StrategyReport | None:
        controlled = [r for r in self.rows if r.strategy is not Strategy.NONE]
        return max(controlled, key=lambda r: r.efficiency, default=None)

    @property
    def converged(self) -> bool:
        return all(r.converged for r in self.rows)


def uncontrolled_baseline(
    p: ModelParams, x0: SirState, grid: TimeGrid
) -> tuple[float, Trajectory]:
    states = simulate(p, x0, grid)
    return cumulative_infected(states), states


def run_strategy(
    strategy: Strategy,
    p: ModelParams,
    w: CostWeights,
    x0: SirState,
    grid: TimeGrid,
    opts: OcOptions | None = None,
    baseline: float | None = None,
) -> StrategyReport:
    """Solve one strategy and score it against the uncontrolled run."""
    if baseline is None:
        baseline, _ = uncontrolled_baseline(p, x0, grid)
    solution = fbs_solve(p, w, x0, grid, opts, active=strategy)
    a_c = cumulative_infected(solution.states)
    report = StrategyReport(
        strategy=strategy,
        solution=solution,
        cumulative_infected=a_c,
        baseline=baseline,
        efficiency=efficiency_index(a_c, baseline),
    )
    logger.info(
        "%s: A=%.4f E.I.=%.2f%% (%d sweeps)",
        strategy.describe(),
        a_c,
        report.efficiency,
        solution.iterations,
    )
    return report


def efficiency_table(
    p: ModelParams,
    w: CostWeights,
    x0: SirState,
    grid: TimeGrid,
    opts: OcOptions | None = None,
    strategies: tuple[Strategy, ...] = (
        Strategy.NONE,
        Strategy.STR1,
        Strategy.STR2,
        Strategy.BOTH,
    ),
) -> EfficiencyReport:
    baseline, baseline_states = uncontrolled_baseline(p, x0, grid)
    rows = [run_strategy(s, p, w, x0, grid, opts, baseline) for s in strategies]
    return EfficiencyReport(baseline=baseline, baseline_states=baseline_states, rows=rows)


@dataclass(frozen=True)
class EndemicSummary:
    point: EquilibriumPoint
    eigenvalues: tuple[complex, complex, complex]


@dataclass(frozen=True)
class EquilibriumReport:
    """Everything known about the equilibria at one (params, controls) pair."""

    controls: ControlPair
    r0: float
    dfe: SirState
    dfe_stability: DfeStability
    endemic: list[EndemicSummary]
    endemic_condition: bool
    backward: BackwardBifurcation
    slope_at_one: float | None
    transcritical: TranscriticalThreshold | None
    r0_star: float | None


def build_equilibrium_report(p: ModelParams, u: ControlPair) -> EquilibriumReport:
    endemic = [
        EndemicSummary(pt, endemic_eigenvalues(pt, p, u)) for pt in endemic_equilibria(p, u)
    ]
    try:
        slope: float | None = slope_dI_dR0_at_one(p, u.u2)
    except NumericalError:
        slope = None
    transcritical = transcritical_u2_threshold(p, u.u1) if p.r > 0 else None
    return EquilibriumReport(
        controls=u,
        r0=basic_reproduction_number(p, u),
        dfe=disease_free_equilibrium(p, u.u1),
        dfe_stability=dfe_stability(p, u),
        endemic=endemic,
        endemic_condition=endemic_stability_condition(p, u.u2),
        backward=backward_bifurcation_condition(p, u.u2),
        slope_at_one=slope,
        transcritical=transcritical,
        r0_star=find_r0_star(p, u),
    )

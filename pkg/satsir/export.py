from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any, Iterable, Sequence

from satsir.equilibria import BranchSample, disease_free_equilibrium
from satsir.numerics import Trajectory
from satsir.params import ControlPair, ModelParams
from satsir.report import EfficiencyReport, EquilibriumReport, StrategyReport


def _num(value: float) -> str:
    # shortest repr that parses back to the same double
    return repr(float(value))


def _write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return path


def _write_json(path: str, data: dict[str, Any]) -> str:
    with open(path, "w") as f:
        json.dump(data, f, indent=2)
        f.write("\n")
    return path


def _complex(z: complex) -> dict[str, float]:
    return {"re": z.real, "im": z.imag}


def export_trajectory(
    path: str | Path,
    trajectory: Trajectory,
    columns: Sequence[str],
    extra: Sequence[tuple[str, Trajectory]] = (),
) -> str:
    """One row per grid node: t, the trajectory columns, then any extra trajectories."""
    header = ["t", *columns]
    for prefix, other in extra:
        header.extend(f"{c}_{prefix}" for c in columns[: other.width])
    rows = []
    for k, t in enumerate(trajectory.times):
        row = [_num(t)] + [_num(v) for v in trajectory.node(k)]
        for _, other in extra:
            row.extend(_num(v) for v in other.node(k))
        rows.append(row)
    return _write_csv(str(path), header, rows)


def export_simulation(states: Trajectory, prefix: str | Path) -> list[str]:
    return [export_trajectory(f"{prefix}_trajectory.csv", states, ("S", "I", "R"))]


def export_scan(
    samples: list[BranchSample],
    p: ModelParams,
    u: ControlPair,
    prefix: str | Path,
) -> list[str]:
    """Bifurcation data: a disease-free row then one row per endemic point, per R0."""
    dfe = disease_free_equilibrium(p, u.u1)
    rows = []
    for s in samples:
        rows.append(
            [_num(s.r0), _num(s.beta), "disease_free", _num(dfe.S), _num(dfe.I), _num(dfe.R),
             s.dfe_stability.value]
        )
        for pt in s.points:
            rows.append(
                [_num(s.r0), _num(s.beta), pt.kind.value, _num(pt.state.S), _num(pt.state.I),
                 _num(pt.state.R), pt.stability.value]
            )
    path = f"{prefix}_scan.csv"
    return [_write_csv(path, ["r0", "beta", "kind", "S", "I", "R", "stability"], rows)]


def equilibrium_report_dict(report: EquilibriumReport) -> dict[str, Any]:
    dfe = report.dfe_stability
    return {
        "controls": {"u1": report.controls.u1, "u2": report.controls.u2},
        "r0": report.r0,
        "disease_free": {
            "state": {"S": report.dfe.S, "I": report.dfe.I, "R": report.dfe.R},
            "stability": dfe.stability.value,
            "eigenvalues": list(dfe.eigenvalues),
            "a11": dfe.a11,
            "dulac_condition": dfe.dulac_condition,
        },
        "endemic": [
            {
                "state": {"S": e.point.state.S, "I": e.point.state.I, "R": e.point.state.R},
                "stability": e.point.stability.value,
                "eigenvalues": [_complex(z) for z in e.eigenvalues],
            }
            for e in report.endemic
        ],
        "endemic_stability_condition": report.endemic_condition,
        "backward_bifurcation": {
            "holds": report.backward.holds,
            "margin": report.backward.margin,
        },
        "slope_dI_dR0_at_one": report.slope_at_one,
        "transcritical_u2": (
            None
            if report.transcritical is None
            else {"u2": report.transcritical.u2, "admissible": report.transcritical.admissible}
        ),
        "r0_star": report.r0_star,
    }


def export_equilibria(report: EquilibriumReport, prefix: str | Path) -> list[str]:
    return [_write_json(f"{prefix}_equilibria.json", equilibrium_report_dict(report))]


def _strategy_summary(report: StrategyReport) -> dict[str, Any]:
    sol = report.solution
    return {
        "strategy": report.strategy.value,
        "description": report.strategy.describe(),
        "objective": sol.objective,
        "cumulative_infected": report.cumulative_infected,
        "baseline_cumulative_infected": report.baseline,
        "efficiency_index": report.efficiency,
        "iterations": sol.iterations,
        "converged": sol.converged,
    }


def export_optimization(
    report: StrategyReport,
    baseline_states: Trajectory,
    prefix: str | Path,
) -> list[str]:
    """Controls, states (beside the uncontrolled run), costates and a JSON summary.

    Creates:
      - {prefix}_controls.csv
      - {prefix}_states.csv
      - {prefix}_adjoints.csv
      - {prefix}_summary.json
    """
    sol = report.solution
    return [
        export_trajectory(
            f"{prefix}_controls.csv", sol.schedule.as_trajectory(), ("u1", "u2")
        ),
        export_trajectory(
            f"{prefix}_states.csv",
            sol.states,
            ("S", "I", "R"),
            extra=[("uncontrolled", baseline_states)],
        ),
        export_trajectory(f"{prefix}_adjoints.csv", sol.adjoints, ("l1", "l2", "l3")),
        _write_json(f"{prefix}_summary.json", _strategy_summary(report)),
    ]


def export_efficiency(report: EfficiencyReport, prefix: str | Path) -> list[str]:
    rows = [_strategy_summary(r) for r in report.rows]
    header = list(rows[0]) if rows else ["strategy"]
    csv_path = _write_csv(
        f"{prefix}_efficiency.csv",
        header,
        (
            [_num(v) if isinstance(v, float) else v for v in row.values()]
            for row in rows
        ),
    )
    best = report.best
    json_path = _write_json(
        f"{prefix}_efficiency.json",
        {
            "baseline_cumulative_infected": report.baseline,
            "strategies": rows,
            "best": None if best is None else best.strategy.value,
        },
    )
    return [csv_path, json_path]

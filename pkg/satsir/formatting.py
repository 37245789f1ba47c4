from __future__ import annotations

from satsir.equilibria import BranchSample
from satsir.numerics import Trajectory
from satsir.report import EfficiencyReport, EquilibriumReport, StrategyReport
from satsir.simulation import cumulative_infected


def _banner(title: str) -> str:
    return "=" * 40 + f" {title} " + "=" * 40


def _state(S: float, I: float, R: float) -> str:
    return f"S={S:.4f}  I={I:.4f}  R={R:.4f}"


def format_simulation(states: Trajectory, source: str) -> str:
    S, I, R = states.final
    lines = [
        _banner("SatSIR Simulation"),
        f"Config: {source}",
        f"Horizon: [{states.grid.t0:g}, {states.grid.t1:g}] with {states.grid.n} steps",
        f"Final state: {_state(S, I, R)}",
        f"Cumulative infected: {cumulative_infected(states):.4f}",
    ]
    return "\n".join(lines)


def format_equilibrium_report(report: EquilibriumReport) -> str:
    dfe = report.dfe_stability
    u = report.controls
    lines = [
        _banner("SatSIR Equilibria"),
        f"Controls: u1={u.u1:g}  u2={u.u2:g}",
        f"R0: {report.r0:.6f}",
        "",
        "DISEASE-FREE:",
        f"  {_state(report.dfe.S, report.dfe.I, report.dfe.R)}",
        f"  Stability: {dfe.stability.value}",
        "  Eigenvalues: " + ", ".join(f"{ev:.6g}" for ev in dfe.eigenvalues),
    ]
    if dfe.a11 is not None:
        lines.append(f"  a11: {dfe.a11:.6g}")
    lines.append("")

    lines.append("ENDEMIC:")
    if not report.endemic:
        lines.append("  none")
    for e in report.endemic:
        st = e.point.state
        lines.append(f"  * {_state(st.S, st.I, st.R)}  [{e.point.stability.value}]")
        lines.append("    Eigenvalues: " + ", ".join(f"{z:.6g}" for z in e.eigenvalues))
    held = "holds" if report.endemic_condition else "fails"
    lines.append(f"  beta >= max(r b u2^2, r alpha u2): {held}")
    lines.append("")

    lines.append("BIFURCATION:")
    marker = "holds" if report.backward.holds else "fails"
    lines.append(f"  Backward condition: {marker} (margin {report.backward.margin:.6g})")
    if report.slope_at_one is not None:
        lines.append(f"  dI/dR0 at R0=1: {report.slope_at_one:.6g}")
    if report.transcritical is not None:
        tag = "" if report.transcritical.admissible else " (outside [0, 1])"
        lines.append(f"  Transcritical u2: {report.transcritical.u2:.6g}{tag}")
    if report.r0_star is not None:
        lines.append(f"  R0*: {report.r0_star:.6f}")
    return "\n".join(lines)


def format_scan(samples: list[BranchSample]) -> str:
    lines = [_banner("SatSIR Bifurcation Scan"), f"{'R0':>10}  {'DFE':<32} endemic I"]
    for s in samples:
        endemic = ", ".join(f"{i:.4f} ({st.value})" for i, st in s.i_values) or "-"
        lines.append(f"{s.r0:>10.5f}  {s.dfe_stability.value:<32} {endemic}")
    return "\n".join(lines)


def format_strategy_report(report: StrategyReport) -> str:
    sol = report.solution
    status = "converged" if sol.converged else "NOT CONVERGED"
    return "\n".join(
        [
            _banner("SatSIR Optimal Control"),
            f"Strategy: {report.strategy.describe()}",
            f"Sweeps: {sol.iterations} ({status})",
            f"Objective J: {sol.objective:.6f}",
            f"Cumulative infected: {report.cumulative_infected:.4f}"
            f" (uncontrolled {report.baseline:.4f})",
            f"Efficiency index: {report.efficiency:.2f}%",
        ]
    )


def format_efficiency_report(report: EfficiencyReport) -> str:
    lines = [
        _banner("SatSIR Efficiency"),
        f"Uncontrolled cumulative infected: {report.baseline:.4f}",
        "",
        f"{'Strategy':<28} {'A':>12} {'E.I. (%)':>10}  status",
    ]
    for r in report.rows:
        status = "ok" if r.converged else "not converged"
        lines.append(
            f"{r.strategy.describe():<28} {r.cumulative_infected:>12.4f} {r.efficiency:>10.2f}  {status}"
        )
    best = report.best
    if best is not None:
        lines.append("")
        lines.append(f"BEST: {best.strategy.describe()}")
    return "\n".join(lines)

"""Optimal vaccination and treatment by the forward-backward sweep.

The objective is

    J(u1, u2) = int_0^T a1 S + a2 I + b1 u1^2 + b2 u2^2 dt

subject to the model dynamics. Each sweep integrates the states forward,
the costates backward from zero terminal values, then moves the controls a
``relax`` fraction of the way towards the pointwise minimizers of the
Hamiltonian.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from satsir._types import BackwardField, Vector, clamp, is_finite_number, relative_l1_change
from satsir.errors import NumericalError, ParameterError, raise_if_invalid
from satsir.numerics import TimeGrid, Trajectory, rk4_integrate_backward, simpson_integral
from satsir.params import ControlPair, ModelParams, SirState
from satsir.schedule import ControlSchedule
from satsir.simulation import simulate
from satsir.strategy import Strategy

logger = logging.getLogger(__name__)

CUBIC_TOL = 1e-12
CUBIC_MAX_ITER = 100


@dataclass(frozen=True)
class CostWeights:
    """Loss rates a1, a2 for S and I; quadratic control costs b1, b2."""

    a1: float
    a2: float
    b1: float
    b2: float

    def __post_init__(self) -> None:
        raise_if_invalid("CostWeights", self.validate())

    def validate(self) -> list[str]:
        errors: list[str] = []
        for name in ("a1", "a2", "b1", "b2"):
            value = getattr(self, name)
            if not is_finite_number(value):
                errors.append(f"{name} must be a finite number, got {value!r}")
            elif name.startswith("a") and value < 0:
                errors.append(f"{name} must be >= 0, got {value!r}")
            elif name.startswith("b") and value <= 0:
                errors.append(f"{name} must be > 0, got {value!r}")
        return errors

    @classmethod
    def table2(cls) -> CostWeights:
        return cls(a1=0.01, a2=0.08, b1=0.8, b2=0.1)


@dataclass(frozen=True)
class AdjointState:
    """Costates of S, I and R."""

    l1: float
    l2: float
    l3: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.l1, self.l2, self.l3)


@dataclass(frozen=True)
class OcOptions:
    tol: float = 1e-4
    max_iter: int = 500
    relax: float = 0.5

    def __post_init__(self) -> None:
        raise_if_invalid("OcOptions", self.validate())

    def validate(self) -> list[str]:
        errors: list[str] = []
        if not is_finite_number(self.tol) or self.tol <= 0:
            errors.append(f"tol must be > 0, got {self.tol!r}")
        if isinstance(self.max_iter, bool) or not isinstance(self.max_iter, int) or self.max_iter < 1:
            errors.append(f"max_iter must be an integer >= 1, got {self.max_iter!r}")
        if not is_finite_number(self.relax) or not 0 < self.relax <= 1:
            errors.append(f"relax must lie in (0, 1], got {self.relax!r}")
        return errors


@dataclass(frozen=True, eq=False)
class OcSolution:
    """Last sweep of an optimal-control solve; all parts share one grid."""

    schedule: ControlSchedule
    states: Trajectory
    adjoints: Trajectory
    objective: float
    iterations: int
    converged: bool
    strategy: Strategy = Strategy.BOTH

    @property
    def grid(self) -> TimeGrid:
        return self.schedule.grid

    @property
    def u1_schedule(self) -> npt.NDArray[np.float64]:
        return self.schedule.u1

    @property
    def u2_schedule(self) -> npt.NDArray[np.float64]:
        return self.schedule.u2


# ── Objective and Hamiltonian ───────────────────────────────────────


def _require_aligned(states: Trajectory, schedule: ControlSchedule) -> None:
    if states.grid != schedule.grid:
        raise ParameterError("state trajectory and control schedule use different grids")


def objective_value(states: Trajectory, schedule: ControlSchedule, w: CostWeights) -> float:
    _require_aligned(states, schedule)
    integrand = (
        w.a1 * states.column(0)
        + w.a2 * states.column(1)
        + w.b1 * schedule.u1**2
        + w.b2 * schedule.u2**2
    )
    return simpson_integral(integrand, states.grid.step)


def hamiltonian(
    l: AdjointState, x: SirState, u: ControlPair, w: CostWeights, p: ModelParams
) -> float:
    infection = p.beta * x.S * x.I / (1.0 + p.alpha * x.I)
    treated = p.r * u.u2 * x.I / (1.0 + p.b * u.u2 * x.I)
    return (
        w.a1 * x.S
        + w.a2 * x.I
        + w.b1 * u.u1**2
        + w.b2 * u.u2**2
        + l.l1 * (p.A - infection - p.d * x.S - u.u1 * x.S)
        + l.l2 * (infection - p.removal * x.I - treated)
        + l.l3 * (treated + p.gamma * x.I + u.u1 * x.S - p.d * x.R)
    )


# ── Adjoint system ──────────────────────────────────────────────────


def _adjoint_terms(
    l1: float, l2: float, l3: float,
    S: float, I: float,
    u1: float, u2: float,
    w: CostWeights, p: ModelParams,
) -> tuple[float, float, float]:
    damp = 1.0 + p.alpha * I
    treat = 1.0 + p.b * u2 * I
    dl1 = -w.a1 + (l1 - l2) * p.beta * I / damp + p.d * l1 + u1 * (l1 - l3)
    dl2 = (
        -w.a2
        + (l1 - l2) * p.beta * S / damp**2
        + (l2 - l3) * p.r * u2 / treat**2
        + (p.d + p.delta) * l2
        + p.gamma * (l2 - l3)
    )
    dl3 = p.d * l3
    return dl1, dl2, dl3


def adjoint_rhs(
    l: AdjointState, x: SirState, u: ControlPair, w: CostWeights, p: ModelParams
) -> tuple[float, float, float]:
    """Costate derivatives -dH/dS, -dH/dI, -dH/dR."""
    return _adjoint_terms(l.l1, l.l2, l.l3, x.S, x.I, u.u1, u.u2, w, p)


def _adjoint_field(w: CostWeights, p: ModelParams) -> BackwardField:
    def g(t: float, lam: Vector, x: Vector, u: Vector | None) -> Vector:
        u1, u2 = (0.0, 0.0) if u is None else (u[0], u[1])
        return np.array(_adjoint_terms(lam[0], lam[1], lam[2], x[0], x[1], u1, u2, w, p))

    return g


def solve_adjoint(
    states: Trajectory, schedule: ControlSchedule, w: CostWeights, p: ModelParams
) -> Trajectory:
    """Backward costate run with zero terminal values for a given control schedule."""
    _require_aligned(states, schedule)
    return rk4_integrate_backward(
        _adjoint_field(w, p),
        np.zeros(3),
        states.grid,
        states,
        schedule.as_trajectory(),
    )


# ── Pointwise controls ──────────────────────────────────────────────


def optimal_u1_pointwise(l1: float, l3: float, S: float, b1: float) -> float:
    if b1 <= 0:
        raise ParameterError(f"b1 must be > 0, got {b1!r}")
    return clamp((l1 - l3) * S / (2.0 * b1))


def solve_u2_cubic(c: float, b: float, I: float) -> float:
    """Nonnegative root of u (1 + b u I)^2 = c, or 0 when c <= 0.

    The left side is convex and increasing for u >= 0 and the root lies in
    [0, c], so Newton started at c descends monotonically onto it. Bisection
    takes over if a step ever leaves the bracket.
    """
    if I < 0 or b < 0:
        raise ParameterError(f"u2 cubic needs b, I >= 0, got b={b!r}, I={I!r}")
    if not c > 0:
        return 0.0
    k = b * I
    if k == 0.0:
        return c

    lo, hi = 0.0, c
    u = c
    for _ in range(CUBIC_MAX_ITER):
        inner = 1.0 + k * u
        phi = u * inner * inner - c
        if phi == 0.0:
            return u
        if phi > 0:
            hi = u
        else:
            lo = u
        step = phi / (inner * (1.0 + 3.0 * k * u))
        nxt = u - step
        if not lo <= nxt <= hi:
            nxt = 0.5 * (lo + hi)
        if abs(nxt - u) <= CUBIC_TOL * max(u, 1e-300):
            return nxt
        u = nxt
    return u


def optimal_u2_pointwise(
    l2: float, l3: float, I: float, b2: float, p: ModelParams
) -> float:
    if b2 <= 0:
        raise ParameterError(f"b2 must be > 0, got {b2!r}")
    if I < 0:
        raise ParameterError(f"I must be >= 0, got {I!r}")
    c = (l2 - l3) * p.r * I / (2.0 * b2)
    return clamp(solve_u2_cubic(c, p.b, I))


def _candidate_controls(
    states: Trajectory,
    adjoints: Trajectory,
    w: CostWeights,
    p: ModelParams,
    active: Strategy,
) -> tuple[Vector, Vector]:
    size = states.grid.n + 1
    S, I = states.column(0), states.column(1)
    l1, l2, l3 = adjoints.column(0), adjoints.column(1), adjoints.column(2)
    u1 = np.zeros(size)
    u2 = np.zeros(size)
    if active.vaccinates:
        u1 = np.clip((l1 - l3) * S / (2.0 * w.b1), 0.0, 1.0)
    if active.treats:
        # states can dip a hair below zero late in stiff runs
        I_safe = np.maximum(I, 0.0)
        u2 = np.array(
            [
                optimal_u2_pointwise(float(l2[k]), float(l3[k]), float(I_safe[k]), w.b2, p)
                for k in range(size)
            ]
        )
    return u1, u2


def pointwise_residuals(
    solution: OcSolution, w: CostWeights, p: ModelParams
) -> tuple[Vector, Vector]:
    """|u - characterization| per node for each control channel."""
    c1, c2 = _candidate_controls(solution.states, solution.adjoints, w, p, solution.strategy)
    return np.abs(solution.u1_schedule - c1), np.abs(solution.u2_schedule - c2)


# ── Sensitivities ───────────────────────────────────────────────────


def control_gradient(
    states: Trajectory,
    adjoints: Trajectory,
    schedule: ControlSchedule,
    w: CostWeights,
    p: ModelParams,
) -> tuple[Vector, Vector]:
    """dH/du1 and dH/du2 at every node."""
    _require_aligned(states, schedule)
    S, I = states.column(0), states.column(1)
    l1, l2, l3 = adjoints.column(0), adjoints.column(1), adjoints.column(2)
    u1, u2 = schedule.u1, schedule.u2
    g1 = 2.0 * w.b1 * u1 - (l1 - l3) * S
    g2 = 2.0 * w.b2 * u2 - (l2 - l3) * p.r * I / (1.0 + p.b * u2 * I) ** 2
    return g1, g2


def directional_derivative(
    states: Trajectory,
    adjoints: Trajectory,
    schedule: ControlSchedule,
    w: CostWeights,
    p: ModelParams,
    du1: npt.ArrayLike,
    du2: npt.ArrayLike,
) -> float:
    """First-order change of J along the control perturbation (du1, du2)."""
    g1, g2 = control_gradient(states, adjoints, schedule, w, p)
    d1 = np.asarray(du1, dtype=np.float64)
    d2 = np.asarray(du2, dtype=np.float64)
    if d1.shape != g1.shape or d2.shape != g2.shape:
        raise ParameterError("perturbation must have one value per grid node")
    return simpson_integral(g1 * d1 + g2 * d2, states.grid.step)


# ── Forward-backward sweep ──────────────────────────────────────────


def _require_convex_hamiltonian(w: CostWeights) -> None:
    # Hessian of H in (u1, u2) is diag(2 b1, 2 b2) plus a nonnegative treatment term
    if not (w.b1 > 0 and w.b2 > 0):
        raise ParameterError("Hamiltonian is not strictly convex in the controls (need b1, b2 > 0)")


def _sweep(
    p: ModelParams,
    w: CostWeights,
    x0: SirState,
    grid: TimeGrid,
    schedule: ControlSchedule,
    iteration: int,
) -> tuple[Trajectory, Trajectory]:
    try:
        states = simulate(p, x0, grid, schedule)
        adjoints = solve_adjoint(states, schedule, w, p)
    except NumericalError as exc:
        raise NumericalError(
            f"forward-backward sweep {iteration} diverged: {exc}",
            node=exc.node,
            iteration=iteration,
        ) from exc
    return states, adjoints


def fbs_solve(
    p: ModelParams,
    w: CostWeights,
    x0: SirState,
    grid: TimeGrid,
    opts: OcOptions | None = None,
    active: Strategy = Strategy.BOTH,
) -> OcSolution:
    """Forward-backward sweep from u = 0.

    Converged once the relative L1 change of controls, states and costates
    between consecutive sweeps is below ``opts.tol``. Hitting ``max_iter``
    returns the last sweep with ``converged=False``.
    """
    opts = opts or OcOptions()
    _require_convex_hamiltonian(w)

    schedule = ControlSchedule.zeros(grid)
    states, adjoints = _sweep(p, w, x0, grid, schedule, 0)
    converged = False
    iterations = 0

    for iteration in range(1, opts.max_iter + 1):
        c1, c2 = _candidate_controls(states, adjoints, w, p, active)
        u1 = np.clip(opts.relax * c1 + (1.0 - opts.relax) * schedule.u1, 0.0, 1.0)
        u2 = np.clip(opts.relax * c2 + (1.0 - opts.relax) * schedule.u2, 0.0, 1.0)
        new_schedule = ControlSchedule(grid, u1, u2)
        new_states, new_adjoints = _sweep(p, w, x0, grid, new_schedule, iteration)

        du = relative_l1_change(new_schedule.stacked(), schedule.stacked())
        dx = relative_l1_change(new_states.samples, states.samples)
        dl = relative_l1_change(new_adjoints.samples, adjoints.samples)
        schedule, states, adjoints = new_schedule, new_states, new_adjoints
        iterations = iteration
        logger.debug(
            "sweep %d: du=%.3e dx=%.3e dlambda=%.3e", iteration, du, dx, dl
        )
        if max(du, dx, dl) < opts.tol:
            converged = True
            break

    if converged:
        logger.info("forward-backward sweep converged after %d sweep(s)", iterations)
    else:
        logger.warning(
            "forward-backward sweep stopped at max_iter=%d without reaching tol=%g",
            opts.max_iter,
            opts.tol,
        )

    objective = objective_value(states, schedule, w)
    if not math.isfinite(objective):
        raise NumericalError("objective is not finite", iteration=iterations)
    return OcSolution(
        schedule=schedule,
        states=states,
        adjoints=adjoints,
        objective=objective,
        iterations=iterations,
        converged=converged,
        strategy=active,
    )

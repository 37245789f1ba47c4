"""Equilibria, reproduction number, stability and bifurcation conditions.

Controls are held constant throughout this module. Endemic infected levels
are the positive roots of C1 I^2 + C2 I + C3 = 0, which share their roots
with the equilibrium gap H(I).
"""
from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np
import numpy.typing as npt

from satsir.dynamics import treatment_rate
from satsir.errors import NumericalError, ParameterError
from satsir.params import ControlPair, ModelParams, SirState

logger = logging.getLogger(__name__)

HYPERBOLICITY_EPS = 1e-9
ROOT_TOL = 1e-9
R0_STAR_SHRINK = 0.99
R0_STAR_MAX_ITER = 200


class Stability(Enum):
    ASYMPTOTICALLY_STABLE = "asymptotically_stable"
    UNSTABLE = "unstable"
    GLOBALLY_ASYMPTOTICALLY_STABLE = "globally_asymptotically_stable"
    UNDETERMINED = "undetermined"

    @property
    def is_stable(self) -> bool:
        return self in (
            Stability.ASYMPTOTICALLY_STABLE,
            Stability.GLOBALLY_ASYMPTOTICALLY_STABLE,
        )


class EquilibriumKind(Enum):
    DISEASE_FREE = "disease_free"
    ENDEMIC = "endemic"


class ExistenceCase(Enum):
    ONE_ENDEMIC = "one_endemic"
    NO_ENDEMIC = "no_endemic"
    TWO_ENDEMIC = "two_endemic"


@dataclass(frozen=True)
class EndemicCoefficients:
    """Coefficients of C1 I^2 + C2 I + C3 = 0."""

    c1: float
    c2: float
    c3: float

    @property
    def discriminant(self) -> float:
        return self.c2 * self.c2 - 4.0 * self.c1 * self.c3

    def evaluate(self, I: float) -> float:
        return (self.c1 * I + self.c2) * I + self.c3


@dataclass(frozen=True)
class EquilibriumPoint:
    state: SirState
    kind: EquilibriumKind
    stability: Stability = Stability.UNDETERMINED

    def __post_init__(self) -> None:
        if self.kind is EquilibriumKind.DISEASE_FREE and self.state.I != 0:
            raise ParameterError(f"disease-free point must have I = 0, got {self.state.I!r}")
        if self.kind is EquilibriumKind.ENDEMIC and not self.state.I > 0:
            raise ParameterError(f"endemic point must have I > 0, got {self.state.I!r}")


@dataclass(frozen=True)
class DfeStability:
    """Stability verdict at the disease-free equilibrium with diagnostics."""

    stability: Stability
    r0: float
    eigenvalues: tuple[float, float, float]
    a11: float | None
    dulac_condition: bool


@dataclass(frozen=True)
class TranscriticalThreshold:
    """Treatment level u2^0 at which R0 crosses 1; may fall outside [0, 1]."""

    u2: float
    admissible: bool


@dataclass(frozen=True)
class BackwardBifurcation:
    holds: bool
    margin: float


@dataclass(frozen=True)
class BranchSample:
    """Equilibrium structure at one R0 value of a bifurcation scan."""

    r0: float
    beta: float
    dfe_stability: Stability
    points: tuple[EquilibriumPoint, ...]

    @property
    def i_values(self) -> list[tuple[float, Stability]]:
        return [(pt.state.I, pt.stability) for pt in self.points]


# ── Reproduction number ─────────────────────────────────────────────


def reproduction_number(p: ModelParams, u1: float, u2: float) -> float:
    """beta A / ((d + u1)(d + delta + gamma + r u2)) for unchecked control levels."""
    m = p.d + u1
    q = p.removal + p.r * u2
    if m <= 0 or q <= 0:
        raise ParameterError(
            f"R0 denominator must be positive, got d+u1={m!r}, d+delta+gamma+r*u2={q!r}"
        )
    return p.beta * p.A / (m * q)


def basic_reproduction_number(p: ModelParams, u: ControlPair) -> float:
    return reproduction_number(p, u.u1, u.u2)


def beta_for_r0(p: ModelParams, u: ControlPair, r0: float) -> float:
    """Transmission rate that yields the requested R0 at controls u."""
    if not r0 > 0:
        raise ParameterError(f"target R0 must be > 0, got {r0!r}")
    return r0 * (p.d + u.u1) * (p.removal + p.r * u.u2) / p.A


# ── Disease-free equilibrium ────────────────────────────────────────


def disease_free_equilibrium(p: ModelParams, u1: float) -> SirState:
    if p.d <= 0:
        raise ParameterError("disease-free equilibrium needs d > 0")
    m = p.d + u1
    return SirState(S=p.A / m, I=0.0, R=u1 * p.A / (p.d * m))


def dfe_eigenvalues(p: ModelParams, u: ControlPair) -> tuple[float, float, float]:
    q = p.removal + p.r * u.u2
    r0 = basic_reproduction_number(p, u)
    return (-p.d, -(p.d + u.u1), q * (r0 - 1.0))


def a11_coefficient(p: ModelParams, u: ControlPair) -> float:
    """Leading coefficient of the reduced flow on the centre manifold at R0 = 1."""
    m = p.d + u.u1
    q = p.removal + p.r * u.u2
    return p.d * m * (q * (p.beta + m * p.alpha) - m * p.r * p.b * u.u2**2)


def dfe_stability(
    p: ModelParams, u: ControlPair, eps: float = HYPERBOLICITY_EPS
) -> DfeStability:
    r0 = basic_reproduction_number(p, u)
    eigenvalues = dfe_eigenvalues(p, u)
    dulac = p.alpha >= p.b * u.u2
    a11: float | None = None
    if r0 < 1.0 - eps:
        stability = (
            Stability.GLOBALLY_ASYMPTOTICALLY_STABLE if dulac else Stability.ASYMPTOTICALLY_STABLE
        )
    elif r0 > 1.0 + eps:
        stability = Stability.UNSTABLE
    else:
        a11 = a11_coefficient(p, u)
        if a11 < 0:
            stability = Stability.ASYMPTOTICALLY_STABLE
        elif a11 > 0:
            stability = Stability.UNSTABLE
        else:
            stability = Stability.UNDETERMINED
    return DfeStability(stability, r0, eigenvalues, a11, dulac)


def disease_free_point(p: ModelParams, u: ControlPair) -> EquilibriumPoint:
    return EquilibriumPoint(
        disease_free_equilibrium(p, u.u1),
        EquilibriumKind.DISEASE_FREE,
        dfe_stability(p, u).stability,
    )


def dulac_divergence(S: float, I: float, p: ModelParams, u: ControlPair) -> float:
    """Divergence of the (S, I) field weighted by (1 + b u2 I)/(S I)."""
    if S <= 0 or I <= 0:
        raise ParameterError(f"Dulac divergence needs S, I > 0, got S={S!r}, I={I!r}")
    bu2 = p.b * u.u2
    return (
        -p.A * (1.0 + bu2 * I) / (I * S * S)
        - p.removal * bu2 / S
        - p.beta * (p.alpha - bu2) / (1.0 + p.alpha * I) ** 2
    )


# ── Endemic equilibria ──────────────────────────────────────────────


def equilibrium_gap(I: float, p: ModelParams, u: ControlPair) -> tuple[float, float]:
    """H(I) and H'(I); endemic infected levels are the positive zeros of H."""
    if I < 0:
        raise ParameterError(f"equilibrium gap needs I >= 0, got {I!r}")
    if p.beta <= 0:
        raise ParameterError("equilibrium gap needs beta > 0")
    m = p.d + u.u1
    bu2 = p.b * u.u2
    denom = p.beta * I + m * (1.0 + p.alpha * I)
    treat = 1.0 + bu2 * I
    h = p.A / denom - p.r * u.u2 / (p.beta * treat) - p.removal / p.beta
    dh = p.r * p.b * u.u2**2 / (p.beta * treat**2) - p.A * (p.beta + p.alpha * m) / denom**2
    return h, dh


def _gap_scale(I: float, p: ModelParams, u: ControlPair) -> float:
    m = p.d + u.u1
    terms = (
        p.A / (p.beta * I + m * (1.0 + p.alpha * I)),
        p.r * u.u2 / (p.beta * (1.0 + p.b * u.u2 * I)),
        p.removal / p.beta,
    )
    return max(abs(t) for t in terms)


def endemic_coefficients(p: ModelParams, u: ControlPair) -> EndemicCoefficients:
    m = p.d + u.u1
    dr = p.removal
    q = dr + p.r * u.u2
    bu2 = p.b * u.u2
    damped = p.beta + p.alpha * m
    c1 = bu2 * dr * damped
    c2 = bu2 * (m * dr - p.beta * p.A) + q * damped
    c3 = m * q * (1.0 - basic_reproduction_number(p, u))
    return EndemicCoefficients(c1, c2, c3)


def existence_case(p: ModelParams, u: ControlPair) -> ExistenceCase:
    r0 = basic_reproduction_number(p, u)
    c = endemic_coefficients(p, u)
    if r0 > 1.0:
        return ExistenceCase.ONE_ENDEMIC
    if r0 == 1.0:
        return ExistenceCase.ONE_ENDEMIC if c.c2 < 0 else ExistenceCase.NO_ENDEMIC
    if c.c2 < 0 and c.discriminant > 0:
        return ExistenceCase.TWO_ENDEMIC
    return ExistenceCase.NO_ENDEMIC


def _positive_roots(c: EndemicCoefficients) -> list[float]:
    if c.c1 == 0.0:
        if c.c2 == 0.0:
            return []
        root = -c.c3 / c.c2
        return [root] if root > 0 else []
    disc = c.discriminant
    if disc < 0:
        return []
    if disc == 0:
        roots = [-c.c2 / (2.0 * c.c1)]
    else:
        q = -0.5 * (c.c2 + math.copysign(math.sqrt(disc), c.c2))
        roots = [q / c.c1, c.c3 / q]
    return sorted(r for r in roots if r > 0)


def _polish_root(I: float, p: ModelParams, u: ControlPair) -> float:
    best = I
    best_gap = abs(equilibrium_gap(I, p, u)[0])
    for _ in range(3):
        h, dh = equilibrium_gap(best, p, u)
        if dh == 0.0 or best_gap == 0.0:
            break
        candidate = best - h / dh
        if not candidate > 0:
            break
        gap = abs(equilibrium_gap(candidate, p, u)[0])
        if gap >= best_gap:
            break
        best, best_gap = candidate, gap
    return best


def _endemic_state(I: float, p: ModelParams, u: ControlPair) -> SirState:
    m = p.d + u.u1
    damp = 1.0 + p.alpha * I
    S = p.A * damp / (p.beta * I + m * damp)
    R = (treatment_rate(I, u.u2, p) + p.gamma * I + u.u1 * S) / p.d
    return SirState(S=S, I=I, R=R)


def endemic_equilibria(p: ModelParams, u: ControlPair) -> list[EquilibriumPoint]:
    """Endemic equilibria sorted by infected level, each tagged with its stability."""
    if p.d <= 0:
        raise ParameterError("endemic equilibria need d > 0")
    if p.beta <= 0:
        return []
    points: list[EquilibriumPoint] = []
    for root in _positive_roots(endemic_coefficients(p, u)):
        I = _polish_root(root, p, u)
        point = EquilibriumPoint(_endemic_state(I, p, u), EquilibriumKind.ENDEMIC)
        points.append(replace(point, stability=endemic_stability(point, p, u)))
    return points


# ── Linearization ───────────────────────────────────────────────────


def jacobian(x: SirState, u: ControlPair, p: ModelParams) -> npt.NDArray[np.float64]:
    """Variational matrix of the model at x."""
    S, I = x.S, x.I
    damp = 1.0 + p.alpha * I
    treat = (1.0 + p.b * u.u2 * I) ** 2
    force = p.beta * I / damp
    dsi = p.beta * S / damp**2
    dtreat = p.r * u.u2 / treat
    return np.array(
        [
            [-force - p.d - u.u1, -dsi, 0.0],
            [force, dsi - p.removal - dtreat, 0.0],
            [u.u1, dtreat + p.gamma, -p.d],
        ]
    )


def characteristic_coefficients(J: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """Coefficients [1, c2, c1, c0] of det(lambda I - J) for a 3x3 matrix."""
    a = np.asarray(J, dtype=np.float64)
    if a.shape != (3, 3):
        raise ParameterError(f"expected a 3x3 matrix, got shape {a.shape}")
    return np.real(np.poly(a)).astype(np.float64)


def _reduced_coefficients(x: SirState, u: ControlPair, p: ModelParams) -> tuple[float, float]:
    # the R column decouples (eigenvalue -d); K1, K2 describe the (S, I) block
    J = jacobian(x, u, p)
    k1 = -(J[0, 0] + J[1, 1])
    k2 = J[0, 0] * J[1, 1] - J[0, 1] * J[1, 0]
    return float(k1), float(k2)


def _require_endemic_root(pt: EquilibriumPoint, p: ModelParams, u: ControlPair) -> None:
    if pt.kind is not EquilibriumKind.ENDEMIC:
        raise ParameterError("endemic stability needs an endemic equilibrium point")
    gap, _ = equilibrium_gap(pt.state.I, p, u)
    if abs(gap) > ROOT_TOL * _gap_scale(pt.state.I, p, u):
        raise ParameterError(
            f"I={pt.state.I!r} is not an endemic equilibrium (H(I)={gap!r})"
        )


def endemic_stability_condition(p: ModelParams, u2: float) -> bool:
    """beta >= max(r b u2^2, r alpha u2): every endemic point with K2 > 0 is stable."""
    return p.beta >= max(p.r * p.b * u2**2, p.r * p.alpha * u2)


def endemic_stability(pt: EquilibriumPoint, p: ModelParams, u: ControlPair) -> Stability:
    """Local stability of an endemic point from lambda^2 + K1 lambda + K2.

    K2 < 0 gives a positive eigenvalue. K2 > 0 is stable when K1 > 0 or the
    contact-rate condition holds; otherwise it is left undetermined.
    """
    _require_endemic_root(pt, p, u)
    k1, k2 = _reduced_coefficients(pt.state, u, p)
    if k2 < 0:
        return Stability.UNSTABLE
    if k2 > 0 and (k1 > 0 or endemic_stability_condition(p, u.u2)):
        return Stability.ASYMPTOTICALLY_STABLE
    return Stability.UNDETERMINED


def endemic_eigenvalues(
    pt: EquilibriumPoint, p: ModelParams, u: ControlPair
) -> tuple[complex, complex, complex]:
    _require_endemic_root(pt, p, u)
    k1, k2 = _reduced_coefficients(pt.state, u, p)
    root = cmath.sqrt(k1 * k1 - 4.0 * k2)
    return (complex(-p.d), (-k1 + root) / 2.0, (-k1 - root) / 2.0)


# ── Bifurcations ────────────────────────────────────────────────────


def transcritical_u2_threshold(p: ModelParams, u1: float) -> TranscriticalThreshold | None:
    """Treatment level where R0 = 1, when the untreated R0 exceeds 1."""
    if p.r == 0:
        raise ParameterError("transcritical threshold needs r > 0")
    m = p.d + u1
    if not p.beta * p.A > m * p.removal:
        return None
    u2 = p.beta * p.A / (p.r * m) - p.removal / p.r
    return TranscriticalThreshold(u2=u2, admissible=0.0 <= u2 <= 1.0)


def backward_bifurcation_condition(p: ModelParams, u2: float) -> BackwardBifurcation:
    q = p.r * u2 + p.removal
    margin = p.b * p.r * u2**2 * p.A - q * (q + p.alpha * p.A)
    return BackwardBifurcation(holds=margin > 0, margin=margin)


def slope_dI_dR0_at_one(p: ModelParams, u2: float) -> float:
    """Slope of the endemic branch I(R0) where it leaves I = 0 at R0 = 1."""
    q = p.removal + p.r * u2
    denom = q * (q + p.alpha * p.A) - p.b * p.r * u2**2 * p.A
    if denom == 0:
        raise NumericalError("degenerate bifurcation: slope denominator is zero")
    return p.A * q / denom


def find_r0_star(p: ModelParams, u: ControlPair) -> float | None:
    """Lower R0 limit of the two-equilibria window of a backward bifurcation.

    Shrinks beta from its R0 = 1 value until the discriminant turns
    negative, then bisects the bracket.
    """
    if not backward_bifurcation_condition(p, u.u2).holds:
        return None

    def disc(beta: float) -> float:
        return endemic_coefficients(p.with_beta(beta), u).discriminant

    hi = beta_for_r0(p, u, 1.0)
    lo = hi
    for _ in range(R0_STAR_MAX_ITER):
        lo *= R0_STAR_SHRINK
        if disc(lo) < 0:
            break
        hi = lo
    else:
        logger.debug("no discriminant sign change below beta=%g", hi)
        return None
    logger.debug("R0* bracket beta in [%g, %g]", lo, hi)

    for _ in range(R0_STAR_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if disc(mid) < 0:
            lo = mid
        else:
            hi = mid
    return reproduction_number(p.with_beta(hi), u.u1, u.u2)


def bifurcation_scan(
    p: ModelParams, u: ControlPair, r0_grid: list[float]
) -> list[BranchSample]:
    """Equilibrium structure along R0, varying beta; order follows the grid."""
    samples: list[BranchSample] = []
    for r0 in r0_grid:
        beta = beta_for_r0(p, u, r0)
        pr = p.with_beta(beta)
        samples.append(
            BranchSample(
                r0=r0,
                beta=beta,
                dfe_stability=dfe_stability(pr, u).stability,
                points=tuple(endemic_equilibria(pr, u)),
            )
        )
        logger.debug("scan R0=%g: %d endemic point(s)", r0, len(samples[-1].points))
    return samples

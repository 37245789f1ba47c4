from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace

from satsir.errors import raise_if_invalid


@dataclass(frozen=True)
class ModelParams:
    """The eight epidemiological constants of the saturated SIR model.

    Rates are per month; populations are counts of individuals. ``b`` is a
    dimensionless scaling of ``u2 * I`` in the treatment function.
    """

    A: float
    beta: float
    alpha: float
    d: float
    delta: float
    gamma: float
    r: float
    b: float

    def __post_init__(self) -> None:
        raise_if_invalid("ModelParams", self.validate())

    def validate(self) -> list[str]:
        errors: list[str] = []
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                errors.append(f"{f.name} must be a number, got {value!r}")
            elif not math.isfinite(value):
                errors.append(f"{f.name} must be finite, got {value!r}")
            elif value < 0:
                errors.append(f"{f.name} must be >= 0, got {value!r}")
        if not errors:
            if self.A <= 0:
                errors.append(f"A must be > 0, got {self.A!r}")
            if self.d <= 0:
                errors.append(f"d must be > 0, got {self.d!r}")
        return errors

    @property
    def removal(self) -> float:
        """d + delta + gamma, the untreated exit rate from I."""
        return self.d + self.delta + self.gamma

    @property
    def carrying_bound(self) -> float:
        """A / d, the total-population bound of the invariant region."""
        return self.A / self.d

    def with_beta(self, beta: float) -> ModelParams:
        return replace(self, beta=beta)

    @classmethod
    def table2(cls) -> ModelParams:
        """Parameter set used for the optimal-control experiments."""
        return cls(
            A=100.0,
            beta=0.1,
            alpha=0.5,
            d=0.004,
            delta=0.02,
            gamma=0.7,
            r=0.4,
            b=0.05,
        )

    @classmethod
    def figure1(cls, beta: float = 0.0133664) -> ModelParams:
        """Parameter set of the backward-bifurcation diagram.

        beta is free; the default puts R0 near 0.98 at u = (0.5, 0.5).
        """
        return cls(
            A=11.0,
            beta=beta,
            alpha=0.5,
            d=0.000039,
            delta=0.02,
            gamma=0.08,
            r=0.4,
            b=2.21,
        )


@dataclass(frozen=True)
class ControlPair:
    """Vaccination fraction u1 and treatment effort u2, both in [0, 1]."""

    u1: float = 0.0
    u2: float = 0.0

    def __post_init__(self) -> None:
        raise_if_invalid("ControlPair", self.validate())

    def validate(self) -> list[str]:
        errors: list[str] = []
        for name in ("u1", "u2"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                errors.append(f"{name} must be a number, got {value!r}")
            elif not 0.0 <= value <= 1.0:
                errors.append(f"{name} must lie in [0, 1], got {value!r}")
        return errors


@dataclass(frozen=True)
class SirState:
    """Susceptible, infected and recovered head counts."""

    S: float
    I: float
    R: float

    def __post_init__(self) -> None:
        raise_if_invalid("SirState", self.validate())

    def validate(self) -> list[str]:
        errors: list[str] = []
        for name in ("S", "I", "R"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                errors.append(f"{name} must be a number, got {value!r}")
            elif not math.isfinite(value):
                errors.append(f"{name} must be finite, got {value!r}")
            elif value < 0:
                errors.append(f"{name} must be >= 0, got {value!r}")
        return errors

    @property
    def total(self) -> float:
        return self.S + self.I + self.R

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.S, self.I, self.R)

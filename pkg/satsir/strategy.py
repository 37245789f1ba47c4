from __future__ import annotations

from enum import Enum


class Strategy(Enum):
    """Which control channels the optimizer may move.

    STR1 is vaccination only, STR2 treatment only. Inactive channels are
    pinned to zero for the whole horizon.
    """

    NONE = "none"
    STR1 = "str1"
    STR2 = "str2"
    BOTH = "both"

    @property
    def vaccinates(self) -> bool:
        return self in (Strategy.STR1, Strategy.BOTH)

    @property
    def treats(self) -> bool:
        return self in (Strategy.STR2, Strategy.BOTH)

    @property
    def active_controls(self) -> tuple[str, ...]:
        active: list[str] = []
        if self.vaccinates:
            active.append("u1")
        if self.treats:
            active.append("u2")
        return tuple(active)

    def describe(self) -> str:
        return _DESCRIPTIONS[self]

    @classmethod
    def parse(cls, name: str) -> Strategy:
        try:
            return cls(name.lower())
        except ValueError:
            choices = ", ".join(s.value for s in cls)
            raise ValueError(f"unknown strategy {name!r}; expected one of {choices}") from None


_DESCRIPTIONS = {
    Strategy.NONE: "no control",
    Strategy.STR1: "STR-1 (vaccination only)",
    Strategy.STR2: "STR-2 (treatment only)",
    Strategy.BOTH: "vaccination and treatment",
}

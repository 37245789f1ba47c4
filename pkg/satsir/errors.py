from __future__ import annotations


class SatSirError(Exception):
    """Base class for every error raised by satsir."""


class ParameterError(SatSirError, ValueError):
    """A value type invariant or an operation precondition was violated."""


class ConfigError(ParameterError):
    """A run configuration could not be parsed or validated."""


class NumericalError(SatSirError, ArithmeticError):
    """A computation produced non-finite values or hit a degenerate case."""

    def __init__(
        self,
        message: str,
        *,
        node: int | None = None,
        iteration: int | None = None,
    ) -> None:
        super().__init__(message)
        self.node = node
        self.iteration = iteration


def raise_if_invalid(type_name: str, errors: list[str]) -> None:
    """Raise a ParameterError listing every violated invariant."""
    if errors:
        raise ParameterError(
            f"Invalid {type_name}:\n" + "\n".join(f"  - {e}" for e in errors)
        )

"""JSON run configuration.

Every section mirrors the fields of its value type. Unknown keys fail the
load, and so do booleans where a number is expected.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
from typing import Any, Callable, TypeVar

import numpy as np

from satsir._types import is_finite_number
from satsir.errors import ConfigError, ParameterError, raise_if_invalid
from satsir.numerics import TimeGrid
from satsir.optctl import CostWeights, OcOptions
from satsir.params import ControlPair, ModelParams, SirState
from satsir.strategy import Strategy

T = TypeVar("T")

DEFAULT_OUTPUT = "satsir_out"
BUNDLED_PACKAGE = "satsir.configs"


@dataclass(frozen=True)
class ScanRange:
    """Uniform grid of R0 values for a bifurcation scan."""

    r0_min: float
    r0_max: float
    points: int

    def __post_init__(self) -> None:
        raise_if_invalid("ScanRange", self.validate())

    def validate(self) -> list[str]:
        errors: list[str] = []
        if not is_finite_number(self.r0_min) or self.r0_min <= 0:
            errors.append(f"r0_min must be > 0, got {self.r0_min!r}")
        elif not is_finite_number(self.r0_max) or self.r0_max <= self.r0_min:
            errors.append(f"r0_max must exceed r0_min, got {self.r0_max!r}")
        if isinstance(self.points, bool) or not isinstance(self.points, int) or self.points < 2:
            errors.append(f"points must be an integer >= 2, got {self.points!r}")
        return errors

    def values(self) -> list[float]:
        return [float(v) for v in np.linspace(self.r0_min, self.r0_max, self.points)]


@dataclass(frozen=True)
class RunConfig:
    params: ModelParams
    weights: CostWeights
    initial: SirState
    grid: TimeGrid
    controls: ControlPair
    strategy: Strategy = Strategy.BOTH
    oc_options: OcOptions = OcOptions()
    scan: ScanRange | None = None
    output: str = DEFAULT_OUTPUT
    source: str = "<dict>"

    def with_overrides(
        self,
        *,
        output: str | None = None,
        strategy: str | None = None,
        grid_n: int | None = None,
    ) -> RunConfig:
        """Copy with command-line overrides applied and re-validated."""
        cfg = self
        if output is not None:
            cfg = replace(cfg, output=output)
        if strategy is not None:
            cfg = replace(cfg, strategy=_parse_strategy(strategy, "strategy"))
        if grid_n is not None:
            grid = _build(
                TimeGrid,
                "grid",
                t0=self.grid.t0,
                t1=self.grid.t1,
                n=grid_n,
            )
            cfg = replace(cfg, grid=grid)
        return cfg


# ── Parsing helpers ─────────────────────────────────────────────────


def _qualify(exc: ParameterError, section: str) -> ConfigError:
    lines = str(exc).splitlines()
    detail = [line.replace("  - ", f"  - {section}.", 1) for line in lines[1:]]
    return ConfigError(f"Invalid config section {section!r}:\n" + "\n".join(detail))


def _build(cls: Callable[..., T], section: str, **kwargs: Any) -> T:
    try:
        return cls(**kwargs)
    except ParameterError as exc:
        raise _qualify(exc, section) from exc


def _section(
    data: dict[str, Any],
    key: str,
    names: tuple[str, ...],
    required: bool = True,
) -> dict[str, Any] | None:
    if key not in data:
        if required:
            raise ConfigError(f"missing required section {key!r}")
        return None
    body = data[key]
    if not isinstance(body, dict):
        raise ConfigError(f"{key} must be an object, got {type(body).__name__}")
    unknown = sorted(set(body) - set(names))
    if unknown:
        raise ConfigError(f"unknown key(s) in {key}: {', '.join(f'{key}.{u}' for u in unknown)}")
    for name, value in body.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{key}.{name} must be a number, got {value!r}")
    return body


def _require_all(body: dict[str, Any], key: str, names: tuple[str, ...]) -> None:
    missing = [n for n in names if n not in body]
    if missing:
        raise ConfigError(
            f"missing required key(s): {', '.join(f'{key}.{m}' for m in missing)}"
        )


def _parse_strategy(value: Any, path: str) -> Strategy:
    if not isinstance(value, str):
        raise ConfigError(f"{path} must be a string, got {value!r}")
    try:
        return Strategy.parse(value)
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from None


_TOP_LEVEL = (
    "params",
    "weights",
    "initial",
    "grid",
    "controls",
    "strategy",
    "oc_options",
    "scan",
    "output",
)
_PARAMS = ("A", "beta", "alpha", "d", "delta", "gamma", "r", "b")
_WEIGHTS = ("a1", "a2", "b1", "b2")
_INITIAL = ("S", "I", "R")
_GRID = ("t0", "t1", "n")
_CONTROLS = ("u1", "u2")
_OC_OPTIONS = ("tol", "max_iter", "relax")
_SCAN = ("r0_min", "r0_max", "points")


def config_from_dict(data: Any, source: str = "<dict>") -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigError(f"config root must be an object, got {type(data).__name__}")
    unknown = sorted(set(data) - set(_TOP_LEVEL))
    if unknown:
        raise ConfigError(f"unknown top-level key(s): {', '.join(unknown)}")

    required = {
        "params": (_PARAMS, ModelParams),
        "weights": (_WEIGHTS, CostWeights),
        "initial": (_INITIAL, SirState),
        "grid": (_GRID, TimeGrid),
        "controls": (_CONTROLS, ControlPair),
    }
    built: dict[str, Any] = {}
    for key, (names, cls) in required.items():
        body = _section(data, key, names)
        assert body is not None
        _require_all(body, key, names)
        built[key] = _build(cls, key, **body)

    oc_body = _section(data, "oc_options", _OC_OPTIONS, required=False)
    oc_options = _build(OcOptions, "oc_options", **oc_body) if oc_body else OcOptions()

    scan_body = _section(data, "scan", _SCAN, required=False)
    scan = None
    if scan_body is not None:
        _require_all(scan_body, "scan", _SCAN)
        scan = _build(ScanRange, "scan", **scan_body)

    strategy = _parse_strategy(data.get("strategy", Strategy.BOTH.value), "strategy")
    output = data.get("output", DEFAULT_OUTPUT)
    if not isinstance(output, str) or not output:
        raise ConfigError(f"output must be a non-empty string, got {output!r}")

    return RunConfig(
        strategy=strategy,
        oc_options=oc_options,
        scan=scan,
        output=output,
        source=source,
        **built,
    )


def bundled_configs() -> list[str]:
    """Names of the configs shipped with the package."""
    root = resources.files(BUNDLED_PACKAGE)
    return sorted(p.name[: -len(".json")] for p in root.iterdir() if p.name.endswith(".json"))


def _decode(source: Any, label: str) -> tuple[str, str]:
    try:
        return source.read_text(encoding="utf-8"), label
    except UnicodeDecodeError as exc:
        raise ConfigError(f"{label}: not valid UTF-8 text ({exc.reason} at byte {exc.start})") from exc
    except OSError as exc:
        raise ConfigError(f"{label}: cannot read config ({exc.strerror or exc})") from exc


def _read_text(path: str | Path) -> tuple[str, str]:
    candidate = Path(path)
    if candidate.is_file():
        return _decode(candidate, str(candidate))
    name = candidate.name if candidate.suffix == ".json" else f"{candidate.name}.json"
    if candidate.parent == Path("."):
        bundled = resources.files(BUNDLED_PACKAGE) / name
        if bundled.is_file():
            return _decode(bundled, f"bundled:{name}")
    raise ConfigError(f"config file not found: {path}")


def load_config(path: str | Path) -> RunConfig:
    """Load and validate a config from a file path or a bundled config name."""
    text, source = _read_text(path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{source}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return config_from_dict(data, source=source)

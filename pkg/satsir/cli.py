from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable

from satsir.config import RunConfig, load_config
from satsir.equilibria import bifurcation_scan
from satsir.errors import ConfigError, NumericalError, ParameterError
from satsir.export import (
    export_efficiency,
    export_equilibria,
    export_optimization,
    export_scan,
    export_simulation,
)
from satsir.formatting import (
    format_efficiency_report,
    format_equilibrium_report,
    format_scan,
    format_simulation,
    format_strategy_report,
)
from satsir.report import (
    build_equilibrium_report,
    efficiency_table,
    run_strategy,
    uncontrolled_baseline,
)
from satsir.schedule import ControlSchedule
from satsir.simulation import simulate
from satsir.strategy import Strategy

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NUMERICAL = 2
EXIT_NOT_CONVERGED = 3


class _Parser(argparse.ArgumentParser):
    """Argument errors count as input errors (exit 1)."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _add_common(cmd: argparse.ArgumentParser) -> None:
    cmd.add_argument(
        "--config",
        required=True,
        help="JSON config path or bundled config name (table2, figure1)",
    )
    cmd.add_argument("--out", default=None, help="Output path prefix (overrides config)")
    cmd.add_argument(
        "--strategy",
        default=None,
        choices=[s.value for s in Strategy],
        help="Control strategy (overrides config)",
    )
    cmd.add_argument(
        "--grid-n", type=int, default=None, help="Even number of time steps (overrides config)"
    )
    cmd.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Log level for stderr diagnostics (default: WARNING)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="satsir",
        description="SIR model with saturated incidence and treatment",
    )
    sub = parser.add_subparsers(dest="command")

    helps = {
        "simulate": "Integrate the model under the config's constant controls",
        "equilibria": "Report equilibria, stability and bifurcation thresholds",
        "scan": "Scan equilibria along a grid of R0 values",
        "optimize": "Solve the optimal control problem for one strategy",
        "efficiency": "Compare all strategies against the uncontrolled run",
    }
    for name, text in helps.items():
        _add_common(sub.add_parser(name, help=text))
    return parser


def _prepare_output(prefix: str) -> str:
    Path(prefix).parent.mkdir(parents=True, exist_ok=True)
    return prefix


def _report_files(paths: list[str]) -> None:
    print("\nFiles written:")
    for path in paths:
        print(f"  {path}")


def _cmd_simulate(cfg: RunConfig) -> int:
    schedule = ControlSchedule.constant(cfg.grid, cfg.controls)
    states = simulate(cfg.params, cfg.initial, cfg.grid, schedule)
    print(format_simulation(states, cfg.source))
    _report_files(export_simulation(states, _prepare_output(cfg.output)))
    return EXIT_OK


def _cmd_equilibria(cfg: RunConfig) -> int:
    report = build_equilibrium_report(cfg.params, cfg.controls)
    print(format_equilibrium_report(report))
    _report_files(export_equilibria(report, _prepare_output(cfg.output)))
    return EXIT_OK


def _cmd_scan(cfg: RunConfig) -> int:
    if cfg.scan is None:
        raise ConfigError("scan needs a 'scan' section with r0_min, r0_max and points")
    samples = bifurcation_scan(cfg.params, cfg.controls, cfg.scan.values())
    print(format_scan(samples))
    _report_files(export_scan(samples, cfg.params, cfg.controls, _prepare_output(cfg.output)))
    return EXIT_OK


def _cmd_optimize(cfg: RunConfig) -> int:
    baseline, baseline_states = uncontrolled_baseline(cfg.params, cfg.initial, cfg.grid)
    report = run_strategy(
        cfg.strategy,
        cfg.params,
        cfg.weights,
        cfg.initial,
        cfg.grid,
        cfg.oc_options,
        baseline,
    )
    print(format_strategy_report(report))
    _report_files(export_optimization(report, baseline_states, _prepare_output(cfg.output)))
    return EXIT_OK if report.converged else EXIT_NOT_CONVERGED


def _cmd_efficiency(cfg: RunConfig) -> int:
    report = efficiency_table(cfg.params, cfg.weights, cfg.initial, cfg.grid, cfg.oc_options)
    print(format_efficiency_report(report))
    _report_files(export_efficiency(report, _prepare_output(cfg.output)))
    return EXIT_OK if report.converged else EXIT_NOT_CONVERGED


COMMANDS: dict[str, Callable[[RunConfig], int]] = {
    "simulate": _cmd_simulate,
    "equilibria": _cmd_equilibria,
    "scan": _cmd_scan,
    "optimize": _cmd_optimize,
    "efficiency": _cmd_efficiency,
}


def dispatch(command: str, cfg: RunConfig) -> int:
    """Run one command and map library errors onto exit codes."""
    try:
        return COMMANDS[command](cfg)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command is None:
        parser.print_help()
        return EXIT_OK

    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        cfg = load_config(args.config).with_overrides(
            output=args.out, strategy=args.strategy, grid_n=args.grid_n
        )
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    logger.debug("loaded config from %s", cfg.source)
    return dispatch(args.command, cfg)

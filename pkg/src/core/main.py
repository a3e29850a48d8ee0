"""
@file main.py
@brief Command-line orchestrator of the kirigami design-analysis engine

Subcommands:
1. geometry  deformed ellipse, ribbon arches and force components at one delta_x
2. curve     force-displacement curve as CSV (and optionally SVG)
3. sweep     one curve per value of a design parameter
4. actuator  margin of an actuator rating over the actuation range
5. validate  mean absolute errors against a measurement CSV
6. oracle    lower-bound check of the boundary force against the ring oracle

@author Kirigami-Actuation team
@date 2026-10-17
@version 1.0

@details
Lengths on the command line are in mm, moduli in MPa; everything is
converted to SI before it reaches the model. Sheets are preset ids (A-D) or
names defined in a configuration file given with --config.

Exit codes: 0 success, 1 usage / input / I/O error, 2 numerical failure.
"""

import argparse
import logging
import os
import sys
from dataclasses import dataclass, field
from datetime import datetime

from src.acquisition.config_loader import LoadedConfig, load_config, resolve_sheet
from src.acquisition.measurements import read_measurements
from src.core.constants import (
    DEFAULT_ACTUATOR_RATING,
    DEFAULT_MAX_DISPLACEMENT_MM,
    DEFAULT_STEP_MM,
    LOG_DIR,
    OUTPUT_DIR,
    RING_DEFAULT_NODES,
    RING_MAX_ITERATIONS,
)
from src.core.errors import (
    ConfigError,
    InvalidArgumentError,
    MeasurementFormatError,
    NotFoundError,
    NumericalFailureError,
    UsageError,
)
from src.mechanics import model
from src.mechanics.discrete import linkage_state, loaded_arches
from src.mechanics.sheet import m_to_mm, mm_to_m
from src.reporting import output_formatter as fmt
from src.reporting import report_generator as csv_out
from src.reporting.svg_report_generator import emit_svg
from src.validation import ring_oracle

logger = logging.getLogger(__name__)

COMMANDS = ("geometry", "curve", "sweep", "actuator", "validate", "oracle")
DEFAULT_ORACLE_DISPLACEMENTS_MM = "5,10,15,20"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2


def configure_logging(verbose=False, log_dir=LOG_DIR):
    """
    Configure the root logger once for a CLI run.

    @param verbose bool Mirror log records to stderr
    @param log_dir str Directory of the timestamped log file

    @return str Path of the log file
    """
    os.makedirs(log_dir, exist_ok=True)
    log_filename = os.path.join(log_dir, f"kirigami_run_{datetime.now().strftime('%Y%m%d_%H%M%S')}.log")
    handlers = [logging.FileHandler(log_filename)]
    if verbose:
        handlers.append(logging.StreamHandler(sys.stderr))
    logging.basicConfig(
        level=logging.DEBUG,
        format='%(asctime)s - %(levelname)s - %(name)s - %(message)s',
        handlers=handlers,
    )
    return log_filename


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

class CliArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting."""

    def error(self, message):
        raise UsageError(f"{message}\n{self.format_usage().rstrip()}")


def _mm_list(text):
    try:
        values = [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"'{text}' is not a comma separated list of numbers") from None
    if not values:
        raise argparse.ArgumentTypeError("at least one displacement is required")
    return values


def build_parser():
    """
    Build the argument parser with one subparser per command.

    @return CliArgumentParser

    @details
    Examples:
    - main.py curve --sheet A --max 25 --step 5 --out curve.csv
    - main.py sweep --sheet A --param thickness --from 0.5 --to 2 --step 0.25
    - main.py oracle --sheet A --dx 5,10,15,20
    - main.py validate --config sheets.ini --sheet thin_tpu --data meas.csv
    """
    common = CliArgumentParser(add_help=False)
    common.add_argument("--config", type=str, default=None,
                        help="INI file with extra materials and sheets (see docs/config.md)")
    common.add_argument("--sheet", type=str, required=True,
                        help="Preset id (A, B, C, D) or sheet name from --config")
    common.add_argument("--explain", action="store_true",
                        help="List every non-published default and model convention in effect")
    common.add_argument("--verbose", action="store_true", help="Mirror log records to stderr")
    common.add_argument("--workers", type=int, default=1,
                        help="Threads used to evaluate independent points (default: 1)")

    parser = CliArgumentParser(
        prog="main.py",
        description="Design analysis of actuated kirigami sheets (tensile force lower bound)",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command",
                                parser_class=CliArgumentParser)

    geometry = sub.add_parser("geometry", parents=[common], help="Geometry and forces at one displacement")
    geometry.add_argument("--dx", type=float, required=True, help="Displacement (mm)")

    curve = sub.add_parser("curve", parents=[common], help="Force-displacement curve as CSV")
    curve.add_argument("--max", type=float, default=DEFAULT_MAX_DISPLACEMENT_MM,
                       help="Last displacement (mm, default: 25)")
    curve.add_argument("--step", type=float, default=DEFAULT_STEP_MM,
                       help="Displacement increment (mm, default: 5)")
    curve.add_argument("--out", type=str, default=None, help="CSV file (default: stdout)")
    curve.add_argument("--svg", type=str, default=None, help="Also render the curve to this SVG file")

    sweep = sub.add_parser("sweep", parents=[common], help="One curve per design parameter value")
    sweep.add_argument("--param", required=True, choices=sorted(model.SWEEP_PARAMETERS))
    sweep.add_argument("--from", dest="start", type=float, required=True, help="First value (mm / MPa)")
    sweep.add_argument("--to", dest="stop", type=float, required=True, help="Last value (mm / MPa)")
    sweep.add_argument("--step", dest="value_step", type=float, required=True, help="Value increment")
    sweep.add_argument("--max", type=float, default=DEFAULT_MAX_DISPLACEMENT_MM,
                       help="Last displacement of each curve (mm, default: 25)")
    sweep.add_argument("--dx-step", type=float, default=DEFAULT_STEP_MM,
                       help="Displacement increment of each curve (mm, default: 5)")
    sweep.add_argument("--out-dir", type=str, default=None,
                       help=f"Directory of the curve files (default: $KIRIGAMI_OUTPUT_DIR or {OUTPUT_DIR})")
    sweep.add_argument("--svg", action="store_true", help="Also render each curve to SVG")

    actuator = sub.add_parser("actuator", parents=[common], help="Check an actuator rating")
    actuator.add_argument("--rating", type=float, default=DEFAULT_ACTUATOR_RATING,
                          help="Actuator force rating (N, default: 50)")
    actuator.add_argument("--max", type=float, default=DEFAULT_MAX_DISPLACEMENT_MM,
                          help="Actuation range (mm, default: 25)")
    actuator.add_argument("--step", type=float, default=DEFAULT_STEP_MM,
                          help="Displacement increment (mm, default: 5)")

    validate = sub.add_parser("validate", parents=[common], help="Compare with measured data")
    validate.add_argument("--data", type=str, required=True,
                          help="CSV with delta_x_mm, force_N and optional half_width_mm")
    validate.add_argument("--component", choices=model.COMPONENTS, default="tensile",
                          help="Force compared with the measurement (default: tensile)")

    oracle = sub.add_parser("oracle", parents=[common], help="Lower-bound check against the ring oracle")
    oracle.add_argument("--dx", type=_mm_list, default=_mm_list(DEFAULT_ORACLE_DISPLACEMENTS_MM),
                        help=f"Comma separated displacements (mm, default: {DEFAULT_ORACLE_DISPLACEMENTS_MM})")
    oracle.add_argument("--nodes", type=int, default=RING_DEFAULT_NODES,
                        help=f"Ring nodes, multiple of 4 and >= 64 (default: {RING_DEFAULT_NODES})")
    oracle.add_argument("--max-iterations", type=int, default=RING_MAX_ITERATIONS,
                        help=f"Minimiser iteration budget (default: {RING_MAX_ITERATIONS})")
    oracle.add_argument("--dump-nodes", type=str, default=None,
                        help="Directory receiving the converged node positions (x_mm,y_mm)")
    return parser


# ---------------------------------------------------------------------------
# Run configuration
# ---------------------------------------------------------------------------

@dataclass
class RunConfig:
    """
    @class RunConfig
    @brief Validated, SI-converted description of one CLI invocation

    options holds the command specific values (rating, data path, sweep
    grid, oracle displacements...).
    """
    sheet: object
    command: str
    output_path: str = None
    step: float = None
    max_displacement: float = None
    explain: bool = False
    workers: int = 1
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command '{self.command}'")
        if self.step is not None and not self.step > 0:
            raise InvalidArgumentError(f"step must be > 0, got {m_to_mm(self.step):g} mm")
        if self.max_displacement is not None and not self.max_displacement > 0:
            raise InvalidArgumentError(
                f"max displacement must be > 0, got {m_to_mm(self.max_displacement):g} mm"
            )
        if self.workers < 1:
            raise InvalidArgumentError(f"workers must be >= 1, got {self.workers}")


def build_run_config(args, loaded=None):
    """Resolve the sheet and convert the parsed arguments to SI units."""
    sheet = resolve_sheet(args.sheet, loaded)
    options = {}
    step = max_displacement = output_path = None

    if args.command == "geometry":
        if args.dx < 0:
            raise InvalidArgumentError(f"--dx must be >= 0, got {args.dx:g} mm")
        options["displacement"] = mm_to_m(args.dx)
    elif args.command == "curve":
        step, max_displacement, output_path = mm_to_m(args.step), mm_to_m(args.max), args.out
        options["svg"] = args.svg
    elif args.command == "sweep":
        step, max_displacement = mm_to_m(args.dx_step), mm_to_m(args.max)
        output_path = args.out_dir or OUTPUT_DIR
        options.update(parameter=args.param, values=model.sweep_values(args.start, args.stop, args.value_step),
                       svg=args.svg)
    elif args.command == "actuator":
        step, max_displacement = mm_to_m(args.step), mm_to_m(args.max)
        options["rating"] = args.rating
    elif args.command == "validate":
        options.update(data=args.data, component=args.component)
    elif args.command == "oracle":
        options.update(displacements=[mm_to_m(d) for d in args.dx], nodes=args.nodes,
                       max_iterations=args.max_iterations)
        output_path = args.dump_nodes

    return RunConfig(
        sheet=sheet,
        command=args.command,
        output_path=output_path,
        step=step,
        max_displacement=max_displacement,
        explain=args.explain,
        workers=args.workers,
        options=options,
    )


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _cmd_geometry(config):
    sheet = config.sheet
    delta_x = config.options["displacement"]
    breakdown = model.tensile_force(sheet, delta_x)
    arches = loaded_arches(sheet, delta_x, breakdown.semi_minor)
    linkage = linkage_state(sheet, delta_x, breakdown.semi_minor)
    fmt.print_banner()
    fmt.print_geometry(sheet, breakdown, arches, linkage)
    if config.explain:
        fmt.print_explain(model.explain_sheet(sheet))
    return EXIT_OK


def _cmd_curve(config):
    curve = model.force_curve(config.sheet, config.max_displacement, config.step, workers=config.workers)
    fmt.print_banner()
    if config.output_path:
        csv_out.save_curve_csv(curve, config.output_path)
        fmt.print_success(f"Curve written to {config.output_path} ({len(curve.samples)} samples)")
    else:
        csv_out.write_curve_csv(curve, sys.stdout)
    if config.options.get("svg"):
        emit_svg(curve, config.options["svg"])
        fmt.print_success(f"Plot written to {config.options['svg']}")
    if config.explain:
        fmt.print_explain(model.explain_sheet(config.sheet, curve))
    return EXIT_OK


def _cmd_sweep(config):
    parameter = config.options["parameter"]
    values = config.options["values"]
    fmt.print_section(f"Sweep of {parameter} on sheet {config.sheet.name}")
    fmt.print_banner()
    results = model.sweep_curves(config.sheet, parameter, values, config.max_displacement,
                                 config.step, workers=config.workers)
    # single writer, value order
    for value, curve in results:
        path = csv_out.sweep_curve_path(config.sheet.name, parameter, value, config.output_path)
        csv_out.save_curve_csv(curve, path)
        if config.options.get("svg"):
            emit_svg(curve, os.path.splitext(path)[0] + ".svg")
        fmt.print_success(f"{parameter} = {value:g}: max F_tensile = "
                          f"{fmt.fmt_num(curve.max_sample.f_tensile)} N -> {path}")
    if config.explain:
        lines = model.explain_sheet(config.sheet)
        for _, curve in results:
            lines.extend(f"{curve.sheet_id}: {line}" for line in model.evaluation_events(curve))
        fmt.print_explain(lines)
    return EXIT_OK


def _cmd_actuator(config):
    margin = model.actuator_margin(config.sheet, config.options["rating"], config.max_displacement,
                                   config.step, workers=config.workers)
    fmt.print_banner()
    fmt.print_actuator(margin)
    if config.explain:
        fmt.print_explain(model.explain_sheet(config.sheet, margin.curve))
    return EXIT_OK


def _cmd_validate(config):
    rows = read_measurements(config.options["data"])
    report = model.validate_against_measurements(config.sheet, rows, config.options["component"])
    fmt.print_banner()
    fmt.print_validation(report)
    if config.explain:
        fmt.print_explain(model.explain_sheet(config.sheet, samples=report.predictions))
    return EXIT_OK


def _cmd_oracle(config):
    options = config.options
    fmt.print_info(f"Running ring oracle ({options['nodes']} nodes) for sheet {config.sheet.name}...")
    report = ring_oracle.check_lower_bound(
        config.sheet, options["displacements"], n_nodes=options["nodes"],
        workers=config.workers, max_iterations=options["max_iterations"],
    )
    fmt.print_lower_bound(report)

    if config.output_path:
        for point in report.points:
            if point.failed:
                continue
            path = os.path.join(
                config.output_path,
                f"ring_{config.sheet.name}_{m_to_mm(point.displacement):g}mm.csv",
            )
            csv_out.save_ring_nodes(point.solution, path)
            fmt.print_success(f"Ring shape written to {path}")

    if config.explain:
        fmt.print_explain(model.explain_sheet(config.sheet))
    if report.failures:
        fmt.print_error(f"{len(report.failures)} oracle points failed to converge")
        return EXIT_NUMERICAL
    return EXIT_OK


_COMMAND_HANDLERS = {
    "geometry": _cmd_geometry,
    "curve": _cmd_curve,
    "sweep": _cmd_sweep,
    "actuator": _cmd_actuator,
    "validate": _cmd_validate,
    "oracle": _cmd_oracle,
}


def run(argv=None):
    """
    Execute one CLI invocation.

    @param argv list Arguments without the program name (default: sys.argv[1:])

    @return int Exit code: 0 success, 1 usage / input / I/O error,
            2 numerical failure
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        fmt.print_error(str(exc))
        return EXIT_USAGE
    except SystemExit as exc:
        # --help
        return exc.code if isinstance(exc.code, int) else EXIT_OK

    logger.info(f"Command: {args.command} (sheet {args.sheet})")
    try:
        loaded = load_config(args.config) if args.config else LoadedConfig()
        config = build_run_config(args, loaded)
        return _COMMAND_HANDLERS[config.command](config)
    except NotFoundError as exc:
        fmt.print_error(str(exc))
        fmt.print_info(parser.format_usage().rstrip())
        logger.error(str(exc))
        return EXIT_USAGE
    except (UsageError, InvalidArgumentError, ConfigError, MeasurementFormatError) as exc:
        fmt.print_error(str(exc))
        logger.error(str(exc))
        return EXIT_USAGE
    except NumericalFailureError as exc:
        fmt.print_error(f"Numerical failure: {exc}")
        logger.error(f"Numerical failure: {exc}", exc_info=True)
        return EXIT_NUMERICAL
    except OSError as exc:
        path = exc.filename or ""
        fmt.print_error(f"I/O error on {path}: {exc.strerror or exc}")
        logger.error(f"I/O error on {path}: {exc}")
        return EXIT_USAGE


def main(argv=None):
    """
    Main entry point: configure logging, then run the command.

    @return int Exit code
    """
    argv = sys.argv[1:] if argv is None else argv
    log_filename = configure_logging(verbose="--verbose" in argv)
    logger.info("=" * 70)
    logger.info(f"Log file: {log_filename}")
    return run(argv)

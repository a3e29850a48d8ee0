"""
@file output_formatter.py
@brief Terminal output formatting and color management module

Provides coloured, formatted console output for the kirigami engine:
- ANSI color codes for terminal output
- Section and header formatting
- Status indicator functions (success, error, warning, info) on stderr
- Result printers for geometry, actuator, validation and oracle reports

@author Kirigami-Actuation team
@date 2026-10-17
@version 1.0

@details
Status lines go to stderr so stdout only carries command results (and the
curve CSV when no output file is given). Colours are applied only when the
target stream is a terminal and NO_COLOR is not set. Human-readable numbers
use 6 significant digits.
"""

import math
import os
import sys

from src.core.constants import HUMAN_DIGITS, LOWER_BOUND_BANNER
from src.mechanics.sheet import m_to_mm


class Colors:
    """
    @class Colors
    @brief ANSI color code constants for terminal styling
    """
    RESET = "\033[0m"
    BOLD = "\033[1m"

    RED = "\033[31m"
    GREEN = "\033[32m"
    YELLOW = "\033[33m"
    BLUE = "\033[34m"
    CYAN = "\033[36m"


def _use_color(stream):
    if os.environ.get("NO_COLOR"):
        return False
    isatty = getattr(stream, "isatty", None)
    return bool(isatty and isatty())


def _emit(text, *styles, stream=None):
    # Resolve the stream at call time so redirected sys.stdout/sys.stderr are honoured
    stream = stream if stream is not None else sys.stderr
    if styles and _use_color(stream):
        text = "".join(styles) + text + Colors.RESET
    print(text, file=stream)


def fmt_num(value, digits=HUMAN_DIGITS):
    """Format a number with `digits` significant digits."""
    if value is None:
        return "n/a"
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return f"{value:.{digits}g}"


def fmt_mm(value_m):
    return f"{fmt_num(m_to_mm(value_m))} mm"


# ---------------------------------------------------------------------------
# Status lines (stderr)
# ---------------------------------------------------------------------------

def print_section(title):
    """
    Print a major section header with visual separators.

    @param title str Section title to display
    """
    _emit("")
    _emit("=" * 60, Colors.BOLD, Colors.CYAN)
    _emit(title.center(60), Colors.BOLD, Colors.CYAN)
    _emit("=" * 60, Colors.BOLD, Colors.CYAN)


def print_success(message):
    """Print success message in green with checkmark symbol."""
    _emit(f"✓ {message}", Colors.GREEN)


def print_info(message):
    """Print informational message in blue."""
    _emit(f"ℹ {message}", Colors.BLUE)


def print_warning(message):
    """Print warning message in yellow."""
    _emit(f"⚠ {message}", Colors.YELLOW)


def print_error(message):
    """
    Print error message in red with X symbol.

    @param message str Message to display

    @details
    Used by the CLI for every error that ends a run (unknown sheet, bad
    file, numerical failure) before the exit code is returned.
    """
    _emit(f"✗ {message}", Colors.RED)


def print_banner():
    """Lower-bound caveat printed with every force result."""
    _emit(f"ℹ {LOWER_BOUND_BANNER}", Colors.BOLD, Colors.YELLOW)


def print_explain(lines):
    """Print `--explain` lines as an indented list."""
    _emit("Assumptions in effect:", Colors.BOLD)
    for line in lines:
        _emit(f"  • {line}")


# ---------------------------------------------------------------------------
# Command results (stdout)
# ---------------------------------------------------------------------------

def _out(text, *styles):
    _emit(text, *styles, stream=sys.stdout)


def print_geometry(sheet, breakdown, arches, linkage):
    """
    Print the deformed geometry and force components at one displacement.

    @param sheet SheetSpec
    @param breakdown ForceBreakdown at the displacement
    @param arches list of RibbonArch with compression set
    @param linkage LinkageState

    @details
    Format example:
    @code
    sheet A  delta_x = 10 mm
      a = 27.24 mm   b = 16.58 mm   regime = bend
      theta = 31.33 deg
      ribbon  t       l (mm)  d_y (mm)  d_z (mm)  phi (deg)  P (N)
      ...
    @endcode
    """
    _out(f"sheet {sheet.name}  delta_x = {fmt_mm(breakdown.displacement)}", Colors.BOLD)
    _out(f"  a = {fmt_mm(breakdown.semi_major)}   b = {fmt_mm(breakdown.semi_minor)}   "
         f"regime = {breakdown.regime}")
    clamp_note = " (clamped to b_min)" if linkage.clamped else ""
    _out(f"  theta = {fmt_num(math.degrees(linkage.link_angle))} deg{clamp_note}")
    _out(f"  {'ribbon':>6}  {'t':>8}  {'l (mm)':>10}  {'d_y (mm)':>10}  {'d_z (mm)':>10}  "
         f"{'phi (deg)':>10}  {'P (N)':>12}")
    for arch in arches:
        _out(
            f"  {arch.index:>6}  {fmt_num(arch.station):>8}  {fmt_num(m_to_mm(arch.rest_length)):>10}  "
            f"{fmt_num(m_to_mm(arch.endpoint_gap)):>10}  {fmt_num(m_to_mm(arch.depth)):>10}  "
            f"{fmt_num(math.degrees(arch.force_angle)):>10}  {fmt_num(arch.compression):>12}"
        )
    print_breakdown(breakdown)


def print_breakdown(breakdown):
    _out(f"  F_boundary = {fmt_num(breakdown.f_boundary)} N")
    _out(f"  F_discrete = {fmt_num(breakdown.f_discrete)} N")
    _out(f"  F_mesh     = {fmt_num(breakdown.f_mesh)} N")
    _out(f"  F_tensile  = {fmt_num(breakdown.f_tensile)} N (lower bound)", Colors.BOLD)


def print_actuator(margin):
    """Print an ActuatorMargin with a pass/fail verdict."""
    _out(f"sheet {margin.sheet_id}  actuation range 0 - {fmt_mm(margin.max_displacement)}", Colors.BOLD)
    _out(f"  max F_tensile = {fmt_num(margin.max_force)} N at delta_x = "
         f"{fmt_mm(margin.max_force_displacement)}")
    _out(f"  rating        = {fmt_num(margin.rating)} N")
    _out(f"  margin        = {fmt_num(margin.margin)} N")
    if margin.passed:
        _out("  PASS", Colors.BOLD, Colors.GREEN)
    else:
        _out("  FAIL", Colors.BOLD, Colors.RED)


def print_validation(report):
    """Print a ValidationReport."""
    _out(f"validation ({report.component} force)", Colors.BOLD)
    _out(f"  points used        = {report.n_points}")
    _out(f"  rows skipped       = {report.n_skipped}")
    _out(f"  MAE force          = {fmt_num(report.mae_force)} N")
    _out(f"  max |force error|  = {fmt_num(report.max_abs_force_error)} N")
    if report.mae_half_width is None:
        _out("  MAE half-width     = n/a (no half-width measured)")
    else:
        _out(f"  MAE half-width     = {fmt_mm(report.mae_half_width)} "
             f"({report.n_half_width_points} points)")
    _out(f"  model <= measured  = {report.n_underpredicted}/{report.n_points} rows")


def print_lower_bound(report):
    """Print a LowerBoundReport as a table followed by the verdict."""
    _out(f"lower-bound check, sheet {report.sheet_id}, {report.n_nodes} nodes", Colors.BOLD)
    _out(f"  {'delta_x (mm)':>12}  {'F_bend (N)':>12}  {'oracle (N)':>12}  {'slack (N)':>12}")
    for point in report.points:
        if point.failed:
            _out(f"  {fmt_num(m_to_mm(point.displacement)):>12}  {fmt_num(point.model_force):>12}  "
                 f"{'failed':>12}  {point.error}", Colors.RED)
            continue
        _out(f"  {fmt_num(m_to_mm(point.displacement)):>12}  {fmt_num(point.model_force):>12}  "
             f"{fmt_num(point.oracle_force):>12}  {fmt_num(point.slack):>12}")
    if report.passed:
        _out(f"  PASS (slack >= -{fmt_num(report.epsilon)} N at every point)", Colors.BOLD, Colors.GREEN)
    else:
        _out("  FAIL", Colors.BOLD, Colors.RED)

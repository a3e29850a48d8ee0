"""
@file svg_report_generator.py
@brief Stacked force-displacement plot rendered to SVG with Jinja2

@author Kirigami-Actuation team
@date 2026-10-17
@version 1.0

@details
Three stacked series are drawn for a ForceCurve:
- F_boundary
- F_boundary + F_discrete
- F_tensile (boundary + discrete + mesh)

Plot coordinates are computed here; the template only lays them out. The
output depends on nothing but the curve (no timestamp), so two renders of
the same curve are byte-identical. A single-sample curve is drawn as one
point per series at the origin of a unit-span axis.
"""

import logging
import os

from jinja2 import Environment, FileSystemLoader, select_autoescape

from src.mechanics.sheet import m_to_mm

logger = logging.getLogger(__name__)

TEMPLATES_DIR = os.path.join(os.path.dirname(__file__), "templates")
TEMPLATE_NAME = "force_curve.svg.j2"

WIDTH = 640
HEIGHT = 420
MARGIN = {"left": 70, "right": 150, "top": 40, "bottom": 50}
TICKS = 5

SERIES = (
    ("boundary", "F_boundary", "#2563EB"),
    ("discrete", "+ F_discrete", "#F97316"),
    ("tensile", "F_tensile (+ F_mesh)", "#16A34A"),
)


def _environment():
    return Environment(
        loader=FileSystemLoader(TEMPLATES_DIR),
        autoescape=select_autoescape(["svg", "svg.j2", "xml"]),
        keep_trailing_newline=True,
    )


def _stacked_values(curve):
    boundary = [s.f_boundary for s in curve.samples]
    discrete = [s.f_boundary + s.f_discrete for s in curve.samples]
    tensile = [s.f_tensile for s in curve.samples]
    return boundary, discrete, tensile


def _scale(low, high, pixel_low, pixel_high):
    span = high - low
    if span <= 0:
        span = 1.0
    return lambda value: pixel_low + (value - low) / span * (pixel_high - pixel_low)


def _fmt(value):
    return f"{value:.2f}"


def build_plot(curve):
    """
    Compute every coordinate of the plot.

    @param curve ForceCurve
    @return dict Template context
    """
    x_values = [m_to_mm(s.displacement) for s in curve.samples]
    stacked = _stacked_values(curve)
    x_max = max(x_values) if max(x_values) > 0 else 1.0
    y_max = max(stacked[2]) if max(stacked[2]) > 0 else 1.0

    left, right = MARGIN["left"], WIDTH - MARGIN["right"]
    top, bottom = MARGIN["top"], HEIGHT - MARGIN["bottom"]
    to_x = _scale(0.0, x_max, left, right)
    to_y = _scale(0.0, y_max, bottom, top)

    series = []
    previous = [0.0] * len(x_values)
    for (key, label, color), values in zip(SERIES, stacked):
        points = [(_fmt(to_x(x)), _fmt(to_y(y))) for x, y in zip(x_values, values)]
        base = [(_fmt(to_x(x)), _fmt(to_y(y))) for x, y in zip(x_values, previous)]
        band = points + list(reversed(base))
        series.append({
            "key": key,
            "label": label,
            "color": color,
            "points": points,
            "polyline": " ".join(f"{x},{y}" for x, y in points),
            "band": " ".join(f"{x},{y}" for x, y in band),
        })
        previous = values

    x_ticks = [
        {"pos": _fmt(to_x(x_max * i / TICKS)), "label": f"{x_max * i / TICKS:.4g}"}
        for i in range(TICKS + 1)
    ]
    y_ticks = [
        {"pos": _fmt(to_y(y_max * i / TICKS)), "label": f"{y_max * i / TICKS:.3g}"}
        for i in range(TICKS + 1)
    ]
    return {
        "title": f"Sheet {curve.sheet_id}: tensile force (lower bound)",
        "width": WIDTH,
        "height": HEIGHT,
        "left": left,
        "right": right,
        "top": top,
        "bottom": bottom,
        "series": series,
        "x_ticks": x_ticks,
        "y_ticks": y_ticks,
        "legend_x": right + 15,
        "n_samples": len(x_values),
    }


def render_svg(curve):
    """Render a ForceCurve to an SVG document string."""
    template = _environment().get_template(TEMPLATE_NAME)
    return template.render(**build_plot(curve))


def emit_svg(curve, path):
    """
    Write the stacked force plot of a curve to `path`.

    @param curve ForceCurve Non-empty curve
    @param path str Output file, parent directories are created

    @return str The path written

    @throws OSError if the file cannot be written
    """
    content = render_svg(curve)
    parent = os.path.dirname(os.fspath(path))
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(content)
    logger.info(f"SVG plot for sheet {curve.sheet_id} written to {path}")
    return str(path)

"""
@file report_generator.py
@brief CSV emission of force curves and converged ring shapes

@author Kirigami-Actuation team
@date 2026-10-17
@version 1.0

@details
**Curve CSV** (one row per sample, fixed column order):

@code
delta_x_mm,a_mm,b_mm,regime,F_boundary_N,F_discrete_N,F_mesh_N,F_tensile_N
0.0,22.24,22.24,bend,0.0,0.0,0.0,0.0
5.0,24.74,...
@endcode

Numbers are written at full precision (Python repr of the float) with `.`
as decimal separator; every row, the last one included, ends with a newline.
The file can be read back as a measurement table, see
src/acquisition/measurements.py.

**Ring node CSV:** `x_mm,y_mm`, one row per node in loop order.
"""

import csv
import logging
import os

from src.core.constants import OUTPUT_DIR
from src.mechanics.sheet import m_to_mm

logger = logging.getLogger(__name__)

CURVE_HEADER = (
    "delta_x_mm", "a_mm", "b_mm", "regime",
    "F_boundary_N", "F_discrete_N", "F_mesh_N", "F_tensile_N",
)
RING_NODES_HEADER = ("x_mm", "y_mm")


def _number(value):
    return repr(float(value))


def curve_rows(curve):
    """CSV rows (lists of str) of a ForceCurve, header excluded."""
    for sample in curve.samples:
        yield [
            _number(m_to_mm(sample.displacement)),
            _number(m_to_mm(sample.semi_major)),
            _number(m_to_mm(sample.semi_minor)),
            sample.regime,
            _number(sample.f_boundary),
            _number(sample.f_discrete),
            _number(sample.f_mesh),
            _number(sample.f_tensile),
        ]


def write_curve_csv(curve, stream):
    """Write a ForceCurve as CSV to an open text stream."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CURVE_HEADER)
    writer.writerows(curve_rows(curve))


def _ensure_parent(path):
    parent = os.path.dirname(os.fspath(path))
    if parent:
        os.makedirs(parent, exist_ok=True)


def save_curve_csv(curve, path):
    """
    Save a ForceCurve as CSV.

    @param curve ForceCurve
    @param path str Output file, parent directories are created

    @return str The path written

    @throws OSError if the file cannot be written
    """
    _ensure_parent(path)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        write_curve_csv(curve, handle)
    logger.info(f"Curve for sheet {curve.sheet_id} written to {path}")
    return str(path)


def sweep_curve_path(sheet_id, parameter, value, out_dir=None):
    """Output path of one sweep curve: <out_dir>/<sheet>_<parameter>_<value>.csv"""
    return os.path.join(out_dir or OUTPUT_DIR, f"{sheet_id}_{parameter}_{value:g}.csv")


def save_ring_nodes(solution, path):
    """Dump converged ring node positions as `x_mm,y_mm` rows."""
    _ensure_parent(path)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(RING_NODES_HEADER)
        for x, y in solution.node_positions:
            writer.writerow([_number(m_to_mm(x)), _number(m_to_mm(y))])
    logger.info(f"Ring shape at delta_x={solution.displacement:.6g} m written to {path}")
    return str(path)

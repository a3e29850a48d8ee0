"""
@file measurements.py
@brief Reading measured force / half-width tables from CSV

@author Kirigami-Actuation team
@date 2026-10-17
@version 1.0

@details
Expected columns (header row required, any order, extra columns ignored):
- delta_x_mm     displacement of the pulled joint
- force_N        measured tensile force (F_tensile_N is accepted too, so a
                 curve written by the `curve` command can be read back)
- half_width_mm  measured half-width b, optional (b_mm accepted too)

Blank cells and `nan` mean "not measured". Rows keep the mm values as read
(delta_x_mm, half_width_mm) and expose SI views (delta_x, half_width); the
model compares half-widths in mm so a curve file validates against itself
with exactly zero error.
"""

import csv
import logging
import math
from dataclasses import dataclass

from src.core.errors import MeasurementFormatError
from src.mechanics.sheet import mm_grid_to_m, mm_to_m

logger = logging.getLogger(__name__)

DISPLACEMENT_COLUMN = "delta_x_mm"
FORCE_COLUMNS = ("force_N", "F_tensile_N")
HALF_WIDTH_COLUMNS = ("half_width_mm", "b_mm")


@dataclass(frozen=True)
class MeasurementRow:
    """One measurement; row is the 1-based line in the file (header = 1)."""
    row: int
    delta_x_mm: float
    force: float
    half_width_mm: float = None

    @property
    def delta_x(self):
        return mm_grid_to_m(self.delta_x_mm) if self.delta_x_mm is not None else None

    @property
    def half_width(self):
        return mm_to_m(self.half_width_mm) if self.half_width_mm is not None else None


def _pick_column(fieldnames, candidates):
    for name in candidates:
        if name in fieldnames:
            return name
    return None


def _cell(record, column, row):
    if column is None:
        return None
    raw = (record.get(column) or "").strip()
    if not raw:
        return None
    try:
        value = float(raw)
    except ValueError:
        raise MeasurementFormatError(f"{column} = '{raw}' is not a number", row) from None
    if math.isnan(value):
        return None
    if math.isinf(value):
        raise MeasurementFormatError(f"{column} must be finite", row)
    return value


def parse_measurements(lines, source="<table>"):
    """
    Parse measurement rows from any iterable of CSV lines.

    @param lines iterable of str
    @param source str Name used in log messages

    @return list of MeasurementRow (at least one)

    @throws MeasurementFormatError with the offending row number
    """
    reader = csv.DictReader(lines)
    fieldnames = [name.strip() for name in (reader.fieldnames or [])]
    if not fieldnames:
        raise MeasurementFormatError("empty table, a header row is required", 1)
    reader.fieldnames = fieldnames

    if DISPLACEMENT_COLUMN not in fieldnames:
        raise MeasurementFormatError(f"missing column {DISPLACEMENT_COLUMN}", 1)
    force_column = _pick_column(fieldnames, FORCE_COLUMNS)
    if force_column is None:
        raise MeasurementFormatError(f"missing force column (one of {', '.join(FORCE_COLUMNS)})", 1)
    width_column = _pick_column(fieldnames, HALF_WIDTH_COLUMNS)

    rows = []
    for record in reader:
        row = reader.line_num
        if None in record:
            raise MeasurementFormatError("more cells than header columns", row)
        delta_x = _cell(record, DISPLACEMENT_COLUMN, row)
        if delta_x is not None and delta_x < 0:
            raise MeasurementFormatError(f"{DISPLACEMENT_COLUMN} must be >= 0, got {delta_x}", row)
        force = _cell(record, force_column, row)
        half_width = _cell(record, width_column, row)
        rows.append(MeasurementRow(
            row=row,
            delta_x_mm=delta_x,
            force=force,
            half_width_mm=half_width,
        ))

    if not rows:
        raise MeasurementFormatError("table has no data rows", 2)
    logger.info(f"Read {len(rows)} measurement rows from {source}")
    return rows


def read_measurements(path):
    """
    Read a measurement CSV file.

    @throws OSError if the file cannot be opened
    @throws MeasurementFormatError for malformed content
    """
    with open(path, newline="", encoding="utf-8") as handle:
        return parse_measurements(handle, source=str(path))

"""
@file model.py
@brief Total tensile force, force-displacement curves, actuator sizing,
       design sweeps and validation against measurements

@author Kirigami-Actuation team
@date 2026-10-17
@version 1.0

@details
F_tensile = F_boundary + F_discrete + F_mesh is a lower bound on the force
the actuator must deliver. Every public result of this module carries that
caveat through LOWER_BOUND_BANNER when it is printed.

Curves follow the bench protocol: the sheet is pulled from rest in constant
increments (5 mm by default) and each increment is evaluated independently,
so samples can be computed concurrently and merged in displacement order.

Validation tables hold (delta_x, measured force, measured half-width) rows.
Rows without a displacement or a force are skipped and counted; rows without
a half-width only contribute to the force error.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from src.core.constants import DEFAULT_STEP, LOWER_BOUND_BANNER
from src.core.errors import InvalidArgumentError, NumericalFailureError
from src.mechanics import boundary, discrete, mesh
from src.mechanics.sheet import (
    ForceBreakdown,
    Material,
    default_mesh_counts,
    default_mesh_section_length,
    make_cross_section,
    m_to_mm,
    mm_grid_to_m,
    mm_to_m,
    mpa_to_pa,
    replace_sheet,
)

logger = logging.getLogger(__name__)

COMPONENTS = ("boundary", "discrete", "mesh", "tensile")


# ---------------------------------------------------------------------------
# Result types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ForceCurve:
    """Ordered force samples of one sheet, starting at rest."""
    sheet_id: str
    samples: tuple
    step: float

    def __post_init__(self):
        if not self.samples:
            raise InvalidArgumentError("A force curve needs at least one sample")
        displacements = [s.displacement for s in self.samples]
        if any(later <= earlier for earlier, later in zip(displacements, displacements[1:])):
            raise InvalidArgumentError("Curve samples must have strictly increasing displacement")
        first = self.samples[0]
        if first.displacement != 0.0 or first.f_tensile != 0.0:
            raise InvalidArgumentError("A force curve starts at rest with zero force")

    @property
    def max_sample(self):
        return max(self.samples, key=lambda s: s.f_tensile)


@dataclass(frozen=True)
class ActuatorMargin:
    """Outcome of checking an actuator rating against a curve."""
    sheet_id: str
    rating: float
    max_force: float
    max_force_displacement: float
    max_displacement: float
    margin: float
    passed: bool
    curve: ForceCurve = field(default=None, repr=False, compare=False)


@dataclass(frozen=True)
class ValidationReport:
    """
    @class ValidationReport
    @brief Mean absolute errors of the model against a measurement table

    mae_half_width is None when no row carries a half-width.
    n_underpredicted counts rows where the prediction does not exceed the
    measurement, i.e. rows consistent with the lower-bound claim.
    """
    component: str
    mae_force: float
    mae_half_width: object
    n_points: int
    n_half_width_points: int
    n_skipped: int
    n_underpredicted: int
    max_abs_force_error: float
    predictions: tuple = field(default=(), repr=False, compare=False)

    @property
    def lower_bound_holds(self):
        return self.n_underpredicted == self.n_points


# ---------------------------------------------------------------------------
# Force assembly
# ---------------------------------------------------------------------------

def tensile_force(sheet, delta_x):
    """
    Evaluate every force component at one displacement.

    @param sheet SheetSpec
    @param delta_x float Displacement (m), >= 0

    @return ForceBreakdown with the exact sum, the ellipse axes, the active
            boundary regime and whether theta was clamped

    @throws NumericalFailureError naming the failing component
    """
    if delta_x < 0:
        raise InvalidArgumentError(f"delta_x must be >= 0, got {delta_x}")

    component = "boundary"
    try:
        b = boundary.solve_semi_minor(sheet.radius, delta_x)
        regime = boundary.boundary_regime(sheet, delta_x, b)
        f_boundary = boundary.boundary_force(sheet, delta_x, b)
        component = "discrete"
        linkage = discrete.linkage_state(sheet, delta_x, b)
        f_discrete = discrete.discrete_force(sheet, delta_x, b)
        component = "mesh"
        f_mesh = mesh.mesh_force(sheet, delta_x)
    except NumericalFailureError as exc:
        logger.error(f"Sheet {sheet.name}: {component} force failed at delta_x={delta_x:.6g} m: {exc}")
        raise exc.with_context(component=component, displacement=delta_x) from exc

    return ForceBreakdown.assemble(
        delta_x,
        f_boundary,
        f_discrete,
        f_mesh,
        semi_major=boundary.semi_major(sheet.radius, delta_x),
        semi_minor=b,
        regime=regime,
        theta_clamped=linkage.clamped,
    )


def curve_displacements(max_displacement, step):
    """
    0, step, 2 step, ... up to max_displacement (inclusive within rounding).

    Each value is snapped with mm_grid_to_m() so the displacement written to a
    curve file in mm reads back as the same metre value.
    """
    if not step > 0:
        raise InvalidArgumentError(f"step must be > 0, got {step}")
    if max_displacement < step:
        raise InvalidArgumentError(
            f"max displacement {max_displacement} must be >= step {step}"
        )
    count = int(math.floor(max_displacement / step + 1e-9))
    return [mm_grid_to_m(m_to_mm(i * step)) for i in range(count + 1)]


def force_curve(sheet, max_displacement, step=DEFAULT_STEP, workers=1):
    """
    Sample the force-displacement curve of a sheet.

    @param sheet SheetSpec
    @param max_displacement float Last displacement to reach (m)
    @param step float Increment (m)
    @param workers int Thread count for evaluating samples

    @return ForceCurve whose samples equal pointwise tensile_force() calls
    """
    displacements = curve_displacements(max_displacement, step)

    def evaluate(delta_x):
        return tensile_force(sheet, delta_x)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            samples = list(pool.map(evaluate, displacements))
    else:
        samples = [evaluate(delta_x) for delta_x in displacements]

    logger.info(
        f"Curve for sheet {sheet.name}: {len(samples)} samples up to "
        f"{m_to_mm(displacements[-1]):.6g} mm"
    )
    return ForceCurve(sheet_id=sheet.name, samples=tuple(samples), step=step)


def regime_switches(curve):
    """Displacements at which consecutive samples change boundary regime."""
    return [
        later.displacement
        for earlier, later in zip(curve.samples, curve.samples[1:])
        if earlier.regime != later.regime
    ]


# ---------------------------------------------------------------------------
# Actuator sizing
# ---------------------------------------------------------------------------

def actuator_margin(sheet, rating, max_displacement, step=DEFAULT_STEP, workers=1):
    """
    Check whether an actuator of the given rating can drive the sheet.

    @param rating float Actuator force rating (N), > 0
    @param max_displacement float Actuation range (m)

    @return ActuatorMargin with margin = rating - max F_tensile and
            passed = margin >= 0
    """
    if not rating > 0:
        raise InvalidArgumentError(f"rating must be > 0, got {rating}")
    curve = force_curve(sheet, max_displacement, step, workers=workers)
    peak = curve.max_sample
    margin = rating - peak.f_tensile
    return ActuatorMargin(
        sheet_id=sheet.name,
        rating=rating,
        max_force=peak.f_tensile,
        max_force_displacement=peak.displacement,
        max_displacement=curve.samples[-1].displacement,
        margin=margin,
        passed=margin >= 0,
        curve=curve,
    )


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def _component_value(breakdown, component):
    return {
        "boundary": breakdown.f_boundary,
        "discrete": breakdown.f_discrete,
        "mesh": breakdown.f_mesh,
        "tensile": breakdown.f_tensile,
    }[component]


def validate_against_measurements(sheet, measurements, component="tensile"):
    """
    Compare model predictions with measured forces and half-widths.

    @param sheet SheetSpec
    @param measurements iterable of MeasurementRow or (delta_x, force, half_width)
           tuples, SI units, None for missing cells
    @param component str Force compared with the measurement: boundary,
           discrete, mesh or tensile

    @return ValidationReport

    @throws InvalidArgumentError for an unknown component, a negative
            displacement or a table without any usable row
    """
    if component not in COMPONENTS:
        raise InvalidArgumentError(f"component must be one of {', '.join(COMPONENTS)}")

    force_errors = []
    width_errors = []
    predictions = []
    skipped = 0
    underpredicted = 0

    for row in measurements:
        if hasattr(row, "half_width_mm"):
            # table rows: half-widths compared in the unit they were written in
            delta_x, measured_force = row.delta_x, row.force
            measured_width, width_in_mm = row.half_width_mm, True
        else:
            delta_x, measured_force, measured_width = row
            width_in_mm = False
        if delta_x is None or measured_force is None:
            skipped += 1
            continue
        if delta_x < 0:
            raise InvalidArgumentError(f"Measured delta_x must be >= 0, got {delta_x}")

        prediction = tensile_force(sheet, delta_x)
        predictions.append(prediction)
        predicted_force = _component_value(prediction, component)
        force_errors.append(abs(predicted_force - measured_force))
        if predicted_force <= measured_force:
            underpredicted += 1
        if measured_width is not None and width_in_mm:
            width_errors.append(mm_to_m(abs(m_to_mm(prediction.semi_minor) - measured_width)))
        elif measured_width is not None:
            width_errors.append(abs(prediction.semi_minor - measured_width))

    if not force_errors:
        raise InvalidArgumentError("Measurement table has no usable row")
    if skipped:
        logger.warning(f"Skipped {skipped} incomplete measurement rows")

    return ValidationReport(
        component=component,
        mae_force=float(np.mean(force_errors)),
        mae_half_width=float(np.mean(width_errors)) if width_errors else None,
        n_points=len(force_errors),
        n_half_width_points=len(width_errors),
        n_skipped=skipped,
        n_underpredicted=underpredicted,
        max_abs_force_error=float(np.max(force_errors)),
        predictions=tuple(predictions),
    )


# ---------------------------------------------------------------------------
# Design sweeps
# ---------------------------------------------------------------------------

def _with_sections(sheet, boundary_changes=None, ribbon_changes=None):
    b_sec, r_sec = sheet.boundary_section, sheet.ribbon_section
    if boundary_changes:
        b_sec = make_cross_section(
            boundary_changes.get("width", b_sec.width),
            boundary_changes.get("thickness", b_sec.thickness),
        )
    if ribbon_changes:
        r_sec = make_cross_section(
            ribbon_changes.get("width", r_sec.width),
            ribbon_changes.get("thickness", r_sec.thickness),
        )
    return replace_sheet(sheet, boundary_section=b_sec, ribbon_section=r_sec)


def _with_radius(sheet, radius):
    changes = {"radius": radius}
    if "mesh_section_length" in sheet.assumed_fields:
        # a derived l_m follows the central ribbon length
        changes["mesh_section_length"] = default_mesh_section_length(radius, sheet.mesh_counts)
    return replace_sheet(sheet, assumed_fields=sheet.assumed_fields, **changes)


def _with_n_discrete(sheet, value):
    n_discrete = int(round(value))
    counts = default_mesh_counts(n_discrete)
    changes = {"n_discrete": n_discrete, "mesh_counts": counts}
    if "mesh_section_length" in sheet.assumed_fields:
        changes["mesh_section_length"] = default_mesh_section_length(sheet.radius, counts)
    assumed = (set(sheet.assumed_fields) - {"n_discrete"}) | {"mesh_counts"}
    return replace_sheet(sheet, assumed_fields=frozenset(assumed), **changes)


# name -> (CLI unit, function(sheet, value in CLI unit) -> SheetSpec)
SWEEP_PARAMETERS = {
    "thickness": ("mm", lambda s, v: _with_sections(
        s, {"thickness": mm_to_m(v)}, {"thickness": mm_to_m(v)})),
    "boundary_thickness": ("mm", lambda s, v: _with_sections(s, {"thickness": mm_to_m(v)})),
    "ribbon_width": ("mm", lambda s, v: _with_sections(s, None, {"width": mm_to_m(v)})),
    "boundary_width": ("mm", lambda s, v: _with_sections(s, {"width": mm_to_m(v)})),
    "radius": ("mm", lambda s, v: _with_radius(s, mm_to_m(v))),
    "youngs_modulus": ("MPa", lambda s, v: replace_sheet(
        s, material=Material(f"{s.material.name}@{v:g}MPa", mpa_to_pa(v)))),
    "n_discrete": ("", _with_n_discrete),
    "mesh_section_length": ("mm", lambda s, v: replace_sheet(s, mesh_section_length=mm_to_m(v))),
    "attachment_half_width": ("mm", lambda s, v: replace_sheet(s, attachment_half_width=mm_to_m(v))),
}


def sweep_values(start, stop, step):
    """Inclusive grid start, start + step, ..., stop (CLI units)."""
    if not step > 0:
        raise InvalidArgumentError(f"sweep step must be > 0, got {step}")
    if stop < start:
        raise InvalidArgumentError(f"sweep end {stop} is below its start {start}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [float(v) for v in np.round(start + step * np.arange(count), 12)]


def sweep_sheets(sheet, parameter, values):
    """One SheetSpec per value, named '<sheet>_<parameter>_<value>'."""
    try:
        _, apply = SWEEP_PARAMETERS[parameter]
    except KeyError:
        raise InvalidArgumentError(
            f"Unknown sweep parameter '{parameter}' (available: {', '.join(sorted(SWEEP_PARAMETERS))})"
        ) from None
    sheets = []
    for value in values:
        swept = apply(sheet, value)
        sheets.append(replace_sheet(swept, name=f"{sheet.name}_{parameter}_{value:g}",
                                    assumed_fields=swept.assumed_fields))
    return sheets


def sweep_curves(sheet, parameter, values, max_displacement, step=DEFAULT_STEP, workers=1):
    """
    Force curves of a sheet family, in the order of `values`.

    @return list of (value, ForceCurve)
    """
    sheets = sweep_sheets(sheet, parameter, values)

    def evaluate(swept):
        return force_curve(swept, max_displacement, step)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            curves = list(pool.map(evaluate, sheets))
    else:
        curves = [evaluate(swept) for swept in sheets]
    return list(zip(values, curves))


# ---------------------------------------------------------------------------
# Explanations
# ---------------------------------------------------------------------------

_ASSUMED_DESCRIPTIONS = {
    "n_discrete": lambda s: f"n_discrete = {s.n_discrete}",
    "mesh_counts": lambda s: f"mesh layout n_m = {list(s.mesh_counts)}",
    "mesh_section_length": lambda s: f"l_m = {m_to_mm(s.mesh_section_length):.6g} mm "
                                     f"(central ribbon length / (max n_m + 1))",
    "attachment_half_width": lambda s: f"b_min = {m_to_mm(s.attachment_half_width):.6g} mm",
}


def explain_sheet(sheet, curve=None, samples=None):
    """
    Human-readable list of the assumptions in effect for a sheet.

    @param curve ForceCurve Optional curve whose theta clamp events and
           regime switches are reported
    @param samples iterable of ForceBreakdown Evaluated points without curve
           order (validation rows); only their theta clamp events are reported

    @return list of str
    """
    lines = [LOWER_BOUND_BANNER]
    for name in sorted(sheet.assumed_fields):
        describe = _ASSUMED_DESCRIPTIONS.get(name)
        if describe:
            lines.append(f"non-published default: {describe(sheet)}")

    switch = boundary.regime_switch_displacement(sheet)
    lines.append(
        "boundary regime: bending while b > b_min, stretching once b <= b_min "
        "(the ribbon is held by the attachment once b reaches b_min)"
    )
    lines.append(
        f"regime switch (b = b_min) at delta_x = {m_to_mm(switch):.6g} mm; "
        "the boundary force is discontinuous there"
    )
    lines.append(
        f"stretch threshold r(pi - 2) = {m_to_mm(boundary.stretch_threshold(sheet.radius)):.6g} mm, "
        f"perimeter-equation flattening at "
        f"{m_to_mm(boundary.full_flattening_displacement(sheet.radius)):.6g} mm (b clamped to 0 beyond)"
    )
    lines.append(
        "ribbon stations t_i = i / (floor(n_d/2) + 1) set both the moment arm and the ribbon "
        "endpoints (l_i = 2 r t_i, d_y,i = 2 b t_i); theta = atan2(max(b, b_min), a)"
    )
    if curve is not None or samples is not None:
        lines.extend(evaluation_events(curve, samples))
    return lines


def evaluation_events(curve=None, samples=None):
    """
    Theta clamp events of evaluated points, plus the regime switches when
    the points form a curve.

    @return list of str
    """
    if curve is not None:
        samples = curve.samples
    lines = []
    clamped = sorted({m_to_mm(s.displacement) for s in samples or () if s.theta_clamped})
    if clamped:
        listing = ", ".join(f"{d:.6g}" for d in clamped)
        lines.append(f"theta clamped to b_min at delta_x = {listing} mm")
    else:
        lines.append("theta never clamped on the evaluated points")
    if curve is not None:
        for displacement in regime_switches(curve):
            lines.append(f"regime switch observed at sample delta_x = {m_to_mm(displacement):.6g} mm")
    return lines

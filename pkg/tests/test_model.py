"""Tests for force assembly, curves, actuator sizing, validation and sweeps."""

import pytest

from src.core.constants import LOWER_BOUND_BANNER
from src.core.errors import InvalidArgumentError
from src.mechanics.boundary import (
    BEND,
    STRETCH,
    bend_force,
    regime_switch_displacement,
)
from src.mechanics.discrete import discrete_force
from src.mechanics.mesh import mesh_force
from src.mechanics.model import (
    ForceCurve,
    actuator_margin,
    curve_displacements,
    evaluation_events,
    explain_sheet,
    force_curve,
    regime_switches,
    sweep_curves,
    sweep_sheets,
    sweep_values,
    tensile_force,
    validate_against_measurements,
)
from src.mechanics.sheet import lookup_material, scale_modulus, sheet_preset
from src.validation.ring_oracle import make_ring, simulate_ring_bend

MM = 1e-3


# ---------------------------------------------------------------------------
# Tensile force
# ---------------------------------------------------------------------------

class TestTensileForce:
    def test_components_sum(self, sheet_a):
        breakdown = tensile_force(sheet_a, 10 * MM)
        assert breakdown.f_boundary == bend_force(sheet_a, 10 * MM)
        assert breakdown.f_discrete == discrete_force(sheet_a, 10 * MM)
        assert breakdown.f_mesh == mesh_force(sheet_a, 10 * MM)
        assert breakdown.f_tensile == breakdown.f_boundary + breakdown.f_discrete + breakdown.f_mesh
        assert breakdown.regime == BEND

    def test_zero_at_rest(self, any_preset):
        breakdown = tensile_force(any_preset, 0.0)
        assert breakdown.f_tensile == 0.0
        assert breakdown.semi_minor == any_preset.radius

    def test_negative_displacement(self, sheet_a):
        with pytest.raises(InvalidArgumentError):
            tensile_force(sheet_a, -1 * MM)

    @pytest.mark.parametrize("factor", [0.5, 2.0, 3570.0 / 14.77])
    def test_homogeneous_in_modulus(self, sheet_a, factor):
        scaled = scale_modulus(sheet_a, factor)
        for delta_x in (5 * MM, 15 * MM, 28 * MM):
            assert tensile_force(scaled, delta_x).f_tensile == pytest.approx(
                factor * tensile_force(sheet_a, delta_x).f_tensile, rel=1e-12
            )

    def test_pet_to_tpu_ratio(self, sheet_a):
        ratio = lookup_material("PET").youngs_modulus / lookup_material("TPU").youngs_modulus
        assert ratio == pytest.approx(241.7, rel=1e-3)

    def test_stretch_regime_reported(self, sheet_a):
        breakdown = tensile_force(sheet_a, 28 * MM)
        assert breakdown.regime == STRETCH
        assert breakdown.theta_clamped
        assert breakdown.f_boundary > 0.0

    @pytest.mark.parametrize("start_mm, stop_mm", [(0, 23), (24, 30)])
    def test_non_decreasing_within_regime(self, sheet_a, start_mm, stop_mm):
        forces = [tensile_force(sheet_a, d * MM).f_tensile for d in range(start_mm, stop_mm + 1)]
        assert all(later >= earlier for earlier, later in zip(forces, forces[1:]))


# ---------------------------------------------------------------------------
# Curves
# ---------------------------------------------------------------------------

class TestForceCurve:
    def test_default_protocol(self, sheet_a):
        curve = force_curve(sheet_a, 25 * MM)
        assert len(curve.samples) == 6
        assert [s.displacement for s in curve.samples] == pytest.approx(
            [0.0, 5 * MM, 10 * MM, 15 * MM, 20 * MM, 25 * MM]
        )

    def test_samples_match_pointwise(self, sheet_a):
        curve = force_curve(sheet_a, 20 * MM, 5 * MM)
        for sample in curve.samples:
            assert sample == tensile_force(sheet_a, sample.displacement)

    def test_parallel_matches_sequential(self, sheet_a):
        assert force_curve(sheet_a, 25 * MM, workers=4) == force_curve(sheet_a, 25 * MM)

    def test_max_not_multiple_of_step(self, sheet_a):
        curve = force_curve(sheet_a, 12 * MM, 5 * MM)
        assert len(curve.samples) == 3

    @pytest.mark.parametrize("max_mm, step_mm", [(25, 0), (25, -5), (3, 5)])
    def test_invalid_grid(self, max_mm, step_mm):
        with pytest.raises(InvalidArgumentError):
            curve_displacements(max_mm * MM, step_mm * MM)

    def test_curve_must_start_at_rest(self, sheet_a):
        with pytest.raises(InvalidArgumentError):
            ForceCurve("A", (tensile_force(sheet_a, 5 * MM),), 5 * MM)

    def test_regime_switch_annotation(self, sheet_a):
        curve = force_curve(sheet_a, 30 * MM, 1 * MM)
        switches = regime_switches(curve)
        assert len(switches) == 1
        assert switches[0] - 1 * MM < regime_switch_displacement(sheet_a) <= switches[0]


# ---------------------------------------------------------------------------
# Actuator sizing
# ---------------------------------------------------------------------------

class TestActuator:
    def test_sheet_a_passes_50n(self, sheet_a):
        result = actuator_margin(sheet_a, 50.0, 25 * MM)
        assert result.passed
        assert result.margin == pytest.approx(50.0 - result.max_force)
        assert result.max_displacement == pytest.approx(25 * MM)

    def test_tiny_rating_fails(self, sheet_a):
        result = actuator_margin(sheet_a, 1e-4, 25 * MM)
        assert not result.passed
        assert result.margin < 0

    def test_stiffer_material_scales_peak(self, sheet_a):
        base = actuator_margin(sheet_a, 50.0, 25 * MM)
        stiff = actuator_margin(scale_modulus(sheet_a, 1000.0), 50.0, 25 * MM)
        assert stiff.max_force == pytest.approx(1000.0 * base.max_force, rel=1e-12)
        assert base.margin - stiff.margin == pytest.approx(999.0 * base.max_force, rel=1e-9)

    def test_keeps_sampled_curve(self, sheet_a):
        result = actuator_margin(sheet_a, 50.0, 30 * MM)
        assert len(result.curve.samples) == 7
        assert result.max_force == max(s.f_tensile for s in result.curve.samples)

    @pytest.mark.parametrize("rating", [0.0, -1.0])
    def test_rating_must_be_positive(self, sheet_a, rating):
        with pytest.raises(InvalidArgumentError):
            actuator_margin(sheet_a, rating, 25 * MM)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

class TestValidation:
    def test_identical_data(self, sheet_a):
        rows = []
        for delta_x in (5 * MM, 10 * MM, 15 * MM):
            breakdown = tensile_force(sheet_a, delta_x)
            rows.append((delta_x, breakdown.f_tensile, breakdown.semi_minor))
        report = validate_against_measurements(sheet_a, rows)
        assert report.mae_force == 0.0
        assert report.mae_half_width == 0.0
        assert report.n_points == 3
        assert report.lower_bound_holds

    def test_single_offset_row(self, sheet_a):
        predicted = tensile_force(sheet_a, 10 * MM).f_tensile
        report = validate_against_measurements(sheet_a, [(10 * MM, predicted + 1.0, None)])
        assert report.mae_force == pytest.approx(1.0)
        assert report.mae_half_width is None
        assert report.n_underpredicted == 1

    def test_incomplete_rows_skipped(self, sheet_a):
        rows = [(5 * MM, 0.05, None), (None, 0.1, None), (10 * MM, None, 16 * MM)]
        report = validate_against_measurements(sheet_a, rows)
        assert report.n_points == 1
        assert report.n_skipped == 2

    def test_no_usable_row(self, sheet_a):
        with pytest.raises(InvalidArgumentError):
            validate_against_measurements(sheet_a, [(None, None, None)])

    def test_unknown_component(self, sheet_a):
        with pytest.raises(InvalidArgumentError):
            validate_against_measurements(sheet_a, [(5 * MM, 0.1, None)], component="friction")

    def test_boundary_against_ring_simulation(self, sheet_a):
        ring = make_ring(sheet_a.radius,
                         sheet_a.youngs_modulus * sheet_a.boundary_section.second_moment,
                         n_nodes=128)
        rows = [(d, simulate_ring_bend(ring, d), None) for d in (5 * MM, 10 * MM)]
        report = validate_against_measurements(sheet_a, rows, component="boundary")
        assert report.mae_force > 0.0
        assert report.lower_bound_holds


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------

class TestSweeps:
    def test_values_inclusive(self):
        assert sweep_values(0.5, 2.0, 0.25) == pytest.approx(
            [0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0]
        )

    def test_values_invalid(self):
        with pytest.raises(InvalidArgumentError):
            sweep_values(1.0, 2.0, 0.0)
        with pytest.raises(InvalidArgumentError):
            sweep_values(2.0, 1.0, 0.5)

    def test_thickness_sweep(self, sheet_a):
        sheets = sweep_sheets(sheet_a, "thickness", [0.5, 1.0, 1.5])
        assert [s.name for s in sheets] == ["A_thickness_0.5", "A_thickness_1", "A_thickness_1.5"]
        assert sheets[2].ribbon_section.thickness == pytest.approx(1.5 * MM)
        assert sheets[2].boundary_section.thickness == pytest.approx(1.5 * MM)

    def test_thicker_is_stiffer(self, sheet_a):
        results = sweep_curves(sheet_a, "thickness", [0.75, 1.0, 1.25], 20 * MM)
        peaks = [curve.max_sample.f_tensile for _, curve in results]
        assert peaks == sorted(peaks)

    def test_modulus_sweep_scales_force(self, sheet_a):
        results = sweep_curves(sheet_a, "youngs_modulus", [14.77, 29.54], 20 * MM, workers=2)
        (_, low), (_, high) = results
        assert high.samples[-1].f_tensile == pytest.approx(2 * low.samples[-1].f_tensile, rel=1e-9)

    def test_n_discrete_sweep(self, sheet_a):
        sheets = sweep_sheets(sheet_a, "n_discrete", sweep_values(3, 7, 2))
        assert [s.n_discrete for s in sheets] == [3, 5, 7]
        assert all(len(s.mesh_counts) == s.n_discrete for s in sheets)
        assert "n_discrete" not in sheets[0].assumed_fields

    def test_radius_sweep_keeps_derived_section_length(self, sheet_a):
        (swept,) = sweep_sheets(sheet_a, "radius", [30.0])
        assert swept.radius == pytest.approx(30 * MM)
        assert swept.mesh_section_length == pytest.approx(2 * 30 * MM / 3)

    def test_invalid_value(self, sheet_a):
        with pytest.raises(InvalidArgumentError):
            sweep_sheets(sheet_a, "attachment_half_width", [25.0])

    def test_unknown_parameter(self, sheet_a):
        with pytest.raises(InvalidArgumentError):
            sweep_sheets(sheet_a, "colour", [1.0])


# ---------------------------------------------------------------------------
# Explanations
# ---------------------------------------------------------------------------

class TestExplain:
    def test_preset_lists_defaults(self, sheet_a):
        lines = explain_sheet(sheet_a)
        assert lines[0] == LOWER_BOUND_BANNER
        text = "\n".join(lines)
        assert "non-published default: n_discrete = 9" in text
        assert "b_min = 5 mm" in text
        assert "stretching once b <= b_min" in text

    def test_explicit_sheet_has_no_defaults(self):
        sheet = sheet_preset("A", n_discrete=9, mesh_counts=(1,) + (2,) * 8,
                             mesh_section_length=14 * MM, attachment_half_width=5 * MM)
        assert not any(line.startswith("non-published") for line in explain_sheet(sheet))

    def test_curve_events(self, sheet_a):
        curve = force_curve(sheet_a, 30 * MM)
        text = "\n".join(explain_sheet(sheet_a, curve))
        assert "theta clamped to b_min" in text
        assert "regime switch observed" in text

    def test_curve_event_lines(self, sheet_a):
        curve = force_curve(sheet_a, 30 * MM, 5 * MM)
        assert evaluation_events(curve) == [
            "theta clamped to b_min at delta_x = 25, 30 mm",
            "regime switch observed at sample delta_x = 25 mm",
        ]

    def test_validation_events(self, sheet_a):
        rows = [(d, tensile_force(sheet_a, d).f_tensile, None) for d in (10 * MM, 28 * MM, 28 * MM)]
        report = validate_against_measurements(sheet_a, rows)
        assert len(report.predictions) == 3
        text = "\n".join(explain_sheet(sheet_a, samples=report.predictions))
        assert "theta clamped to b_min at delta_x = 28 mm" in text
        assert "regime switch observed" not in text

    def test_never_clamped(self, sheet_a):
        samples = [tensile_force(sheet_a, d * MM) for d in (5, 10, 15)]
        assert evaluation_events(samples=samples) == ["theta never clamped on the evaluated points"]

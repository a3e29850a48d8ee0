"""Tests for the shared domain types, materials registry and presets."""

import dataclasses
import math

import numpy as np
import pytest

from src.core.errors import InvalidArgumentError, NotFoundError
from src.mechanics.sheet import (
    ForceBreakdown,
    Material,
    PRESET_ASSUMED_FIELDS,
    SheetSpec,
    available_materials,
    default_mesh_counts,
    default_mesh_section_length,
    lookup_material,
    m_to_mm,
    make_cross_section,
    mm_grid_to_m,
    mm_to_m,
    register_material,
    replace_sheet,
    scale_modulus,
    sheet_preset,
)

MM = 1e-3


# ---------------------------------------------------------------------------
# Units
# ---------------------------------------------------------------------------

class TestUnits:
    def test_grid_values_survive_mm_round_trip(self):
        rng = np.random.default_rng(3)
        for x in rng.uniform(0.0, 0.05, size=2000):
            value_mm = m_to_mm(float(x))
            assert m_to_mm(mm_grid_to_m(value_mm)) == value_mm

    def test_curve_grid(self):
        for i in range(31):
            value_mm = m_to_mm(i * 0.7 * MM)
            assert m_to_mm(mm_grid_to_m(value_mm)) == value_mm

    def test_plain_conversion_kept(self):
        assert mm_grid_to_m(0.0) == 0.0
        assert mm_grid_to_m(10.0) == 10 * MM
        assert mm_grid_to_m(22.24) == pytest.approx(22.24 * MM, rel=1e-14)


# ---------------------------------------------------------------------------
# Cross-sections
# ---------------------------------------------------------------------------

class TestCrossSection:
    def test_unit_square_section(self):
        section = make_cross_section(1 * MM, 1 * MM)
        assert section.second_moment == pytest.approx(8.3333e-14, rel=1e-4)
        assert section.area == pytest.approx(1.0e-6)

    def test_sheet_d_section(self):
        section = make_cross_section(0.8 * MM, 0.25 * MM)
        assert section.second_moment == pytest.approx(1.0417e-15, rel=1e-4)

    @pytest.mark.parametrize("factor", [0.5, 2.0, 3.7])
    def test_thickness_scaling(self, factor):
        base = make_cross_section(0.8 * MM, 0.25 * MM)
        scaled = make_cross_section(0.8 * MM, 0.25 * MM * factor)
        assert scaled.second_moment == pytest.approx(base.second_moment * factor ** 3, rel=1e-12)
        assert scaled.area == pytest.approx(base.area * factor, rel=1e-12)

    @pytest.mark.parametrize("width, thickness", [(1 * MM, 0.0), (0.0, 1 * MM), (-1 * MM, 1 * MM)])
    def test_non_positive_dimension(self, width, thickness):
        with pytest.raises(InvalidArgumentError):
            make_cross_section(width, thickness)


# ---------------------------------------------------------------------------
# Materials
# ---------------------------------------------------------------------------

class TestMaterials:
    def test_builtin_tpu(self):
        assert lookup_material("TPU").youngs_modulus == pytest.approx(14.77e6)

    def test_builtin_pet(self):
        assert lookup_material("PET").youngs_modulus == pytest.approx(3.57e9)

    def test_unknown_lists_available(self):
        with pytest.raises(NotFoundError) as excinfo:
            lookup_material("unobtanium")
        message = str(excinfo.value)
        assert "unobtanium" in message
        assert "TPU" in message and "PET" in message

    def test_register_round_trip(self):
        material = Material("TEST_SHEET_NYLON", 1.2e9)
        register_material(material)
        assert lookup_material("TEST_SHEET_NYLON") == material
        assert "TEST_SHEET_NYLON" in available_materials()

    def test_register_conflict(self):
        register_material(Material("TEST_SHEET_CONFLICT", 1.0e6))
        with pytest.raises(InvalidArgumentError):
            register_material(Material("TEST_SHEET_CONFLICT", 2.0e6))
        replaced = register_material(Material("TEST_SHEET_CONFLICT", 2.0e6), replace=True)
        assert lookup_material("TEST_SHEET_CONFLICT") == replaced

    @pytest.mark.parametrize("name, modulus", [("", 1e6), ("X", 0.0), ("X", -5.0)])
    def test_invalid_material(self, name, modulus):
        with pytest.raises(InvalidArgumentError):
            Material(name, modulus)


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------

class TestPresets:
    def test_sheet_a(self):
        sheet = sheet_preset("A")
        assert sheet.material.name == "TPU"
        assert sheet.radius == pytest.approx(22.24 * MM)
        assert sheet.ribbon_section.thickness == pytest.approx(1 * MM)
        assert sheet.ribbon_section.width == pytest.approx(1 * MM)

    def test_sheet_d(self):
        sheet = sheet_preset("D")
        assert sheet.material.name == "PET"
        assert sheet.radius == pytest.approx(22.14 * MM)
        assert sheet.ribbon_section.thickness == pytest.approx(0.25 * MM)
        assert sheet.ribbon_section.width == pytest.approx(0.8 * MM)

    def test_sheet_c_shares_ribbon_count_with_a(self):
        sheet_c = sheet_preset("C")
        assert sheet_c.material.name == "TPU"
        assert sheet_c.radius == pytest.approx(16.68 * MM)
        assert sheet_c.ribbon_section.thickness == pytest.approx(1 * MM)
        assert sheet_c.ribbon_section.width == pytest.approx(0.75 * MM)
        assert sheet_c.n_discrete == sheet_preset("A").n_discrete

    def test_unknown_preset(self):
        with pytest.raises(NotFoundError):
            sheet_preset("Z")

    def test_presets_satisfy_invariants(self, any_preset):
        assert any_preset.n_discrete % 2 == 1
        assert len(any_preset.mesh_counts) == any_preset.n_discrete
        assert any_preset.mesh_counts[0] == 1
        assert 0 < any_preset.attachment_half_width < any_preset.radius
        assert any_preset.mesh_section_length > 0
        assert any_preset.assumed_fields == PRESET_ASSUMED_FIELDS

    def test_overrides_are_not_assumed(self):
        sheet = sheet_preset("A", n_discrete=5, attachment_half_width=4 * MM)
        assert sheet.n_discrete == 5
        assert sheet.mesh_counts == default_mesh_counts(5)
        assert "n_discrete" not in sheet.assumed_fields
        assert "attachment_half_width" not in sheet.assumed_fields
        assert "mesh_counts" in sheet.assumed_fields

    def test_default_mesh_layout(self):
        assert default_mesh_counts(5) == (1, 2, 2, 2, 2)
        assert default_mesh_section_length(0.03, (1, 2, 2)) == pytest.approx(0.02)


# ---------------------------------------------------------------------------
# SheetSpec invariants
# ---------------------------------------------------------------------------

class TestSheetSpec:
    @pytest.mark.parametrize("changes", [
        {"radius": 0.0},
        {"n_discrete": 4, "mesh_counts": (1, 2, 2, 2)},
        {"n_discrete": 0, "mesh_counts": ()},
        {"mesh_counts": (1, 2, 2)},
        {"mesh_counts": (1, 0, 2, 2, 2, 2, 2, 2, 2)},
        {"attachment_half_width": 0.0},
        {"attachment_half_width": 30 * MM},
        {"mesh_section_length": 0.0},
        {"mesh_section_length": -1 * MM},
    ])
    def test_invalid_sheet(self, sheet_a, changes):
        with pytest.raises(InvalidArgumentError):
            dataclasses.replace(sheet_a, **changes)

    def test_central_index(self, sheet_a):
        assert sheet_a.central_index == 5

    def test_replace_sheet_drops_assumed(self, sheet_a):
        changed = replace_sheet(sheet_a, attachment_half_width=mm_to_m(3.0))
        assert "attachment_half_width" not in changed.assumed_fields
        assert "n_discrete" in changed.assumed_fields

    def test_scale_modulus(self, sheet_a):
        scaled = scale_modulus(sheet_a, 2.0)
        assert scaled.youngs_modulus == pytest.approx(2.0 * sheet_a.youngs_modulus)
        assert scaled.radius == sheet_a.radius

    def test_unconventional_first_mesh_count_warns(self, sheet_a, caplog):
        with caplog.at_level("WARNING"):
            dataclasses.replace(sheet_a, mesh_counts=(2,) * 9)
        assert "convention" in caplog.text


# ---------------------------------------------------------------------------
# ForceBreakdown
# ---------------------------------------------------------------------------

class TestForceBreakdown:
    def test_assemble_is_exact_sum(self):
        breakdown = ForceBreakdown.assemble(0.01, 0.1, 0.2, 0.3)
        assert breakdown.f_tensile == 0.1 + 0.2 + 0.3
        assert math.isnan(breakdown.semi_minor)

    def test_sum_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            ForceBreakdown(0.01, 0.1, 0.2, 0.3, 0.7)

    def test_negative_component(self):
        with pytest.raises(InvalidArgumentError):
            ForceBreakdown.assemble(0.01, -0.1, 0.2, 0.3)

    def test_spec_is_hashable_and_frozen(self, sheet_a):
        with pytest.raises(dataclasses.FrozenInstanceError):
            sheet_a.radius = 1.0
        assert isinstance(sheet_a, SheetSpec)

"""Tests for the catenary arches and the four-bar discrete ribbon force."""

import dataclasses
import math

import numpy as np
import pytest

from src.core.errors import InvalidArgumentError
from src.mechanics.boundary import full_flattening_displacement, solve_semi_minor
from src.mechanics.discrete import (
    RibbonArch,
    catenary_depth,
    catenary_length,
    discrete_force,
    discrete_force_from_linkage,
    linkage_state,
    loaded_arches,
    ribbon_compression,
    ribbon_layout,
    ribbon_stations,
    solve_catenary,
)
from src.mechanics.sheet import make_cross_section, replace_sheet, scale_modulus, sheet_preset

MM = 1e-3


# ---------------------------------------------------------------------------
# Catenary
# ---------------------------------------------------------------------------

class TestCatenary:
    def test_reference_arch(self):
        shape_param, depth = solve_catenary(40 * MM, 30 * MM)
        assert shape_param == pytest.approx(11.10 * MM, rel=1e-2)
        assert depth == pytest.approx(11.77 * MM, rel=1e-2)

    def test_flat_ribbon(self):
        shape_param, depth = solve_catenary(40 * MM, 40 * MM)
        assert math.isinf(shape_param)
        assert depth == 0.0

    def test_gap_longer_than_ribbon(self):
        with pytest.raises(InvalidArgumentError):
            solve_catenary(40 * MM, 41 * MM)

    def test_non_positive_gap(self):
        with pytest.raises(InvalidArgumentError):
            solve_catenary(40 * MM, 0.0)

    def test_round_trip(self):
        rng = np.random.default_rng(2024)
        for _ in range(1000):
            u = rng.uniform(0.01, 20.0)
            gap = rng.uniform(1.0, 100.0) * MM
            shape_param = gap / (2.0 * u)
            length = catenary_length(shape_param, gap)
            solved, depth = solve_catenary(length, gap)
            assert solved == pytest.approx(shape_param, rel=1e-8)
            assert depth == pytest.approx(catenary_depth(shape_param, length), rel=1e-8)

    def test_round_trip_depths_satisfy_quadratic(self):
        rng = np.random.default_rng(2025)
        for _ in range(1000):
            u = rng.uniform(0.01, 20.0)
            gap = rng.uniform(1.0, 100.0) * MM
            length = catenary_length(gap / (2.0 * u), gap)
            shape_param, depth = solve_catenary(length, gap)
            half = length / 2.0
            residual = depth ** 2 + 2 * shape_param * depth - half ** 2
            assert abs(residual) <= 1e-10 * half ** 2

    def test_depth_satisfies_quadratic(self):
        shape_param, depth = solve_catenary(40 * MM, 30 * MM)
        half = 20 * MM
        assert depth ** 2 + 2 * shape_param * depth - half ** 2 == pytest.approx(0.0, abs=1e-15)


# ---------------------------------------------------------------------------
# Layout and compression
# ---------------------------------------------------------------------------

class TestLayout:
    def test_stations(self):
        assert ribbon_stations(1) == [1.0]
        assert ribbon_stations(5) == pytest.approx([1 / 3, 2 / 3, 1.0])
        assert len(ribbon_stations(9)) == 5

    def test_central_ribbon(self, sheet_a5):
        arches = ribbon_layout(sheet_a5, 10 * MM)
        central = arches[-1]
        assert central.station == 1.0
        assert central.rest_length == pytest.approx(2 * sheet_a5.radius)
        assert central.endpoint_gap == pytest.approx(33.2 * MM, abs=0.1 * MM)

    def test_rest_is_flat(self, sheet_a5):
        for arch in ribbon_layout(sheet_a5, 0.0):
            assert arch.depth == 0.0
            assert ribbon_compression(sheet_a5, arch) == 0.0

    def test_arches_deepen(self, sheet_a5):
        shallow = ribbon_layout(sheet_a5, 5 * MM)
        deep = ribbon_layout(sheet_a5, 15 * MM)
        for before, after in zip(shallow, deep):
            assert after.depth > before.depth

    def test_past_flattening_stays_finite(self, sheet_a5):
        for arch in loaded_arches(sheet_a5, 28 * MM):
            assert arch.endpoint_gap > 0
            assert math.isfinite(arch.compression)

    def test_compression_reference(self, sheet_a):
        shape_param, depth = solve_catenary(40 * MM, 30 * MM)
        arch = RibbonArch(
            index=1,
            station=1.0,
            rest_length=40 * MM,
            endpoint_gap=30 * MM,
            shape_param=shape_param,
            depth=depth,
            force_angle=math.atan2(depth, 15 * MM),
        )
        assert math.degrees(arch.force_angle) == pytest.approx(38.1, abs=0.2)
        assert ribbon_compression(sheet_a, arch) == pytest.approx(8.8e-3, rel=1e-2)

    @pytest.mark.parametrize("delta_x_mm", [5.0, 10.0, 20.0])
    def test_longer_ribbons_carry_less(self, sheet_a, delta_x_mm):
        arches = loaded_arches(sheet_a, delta_x_mm * MM)
        assert len(arches) == 5
        for shorter, longer in zip(arches, arches[1:]):
            assert longer.rest_length > shorter.rest_length
            assert longer.compression < shorter.compression

    def test_invalid_arch(self):
        with pytest.raises(InvalidArgumentError):
            RibbonArch(1, 1.0, 40 * MM, 41 * MM, 1.0, 0.0, 0.0)


# ---------------------------------------------------------------------------
# Linkage and force
# ---------------------------------------------------------------------------

class TestLinkage:
    def test_angle_at_10mm(self, sheet_a5):
        linkage = linkage_state(sheet_a5, 10 * MM)
        assert math.degrees(linkage.link_angle) == pytest.approx(31.4, abs=0.15)
        assert not linkage.clamped

    def test_rest_angle(self, sheet_a):
        assert linkage_state(sheet_a, 0.0).link_angle == pytest.approx(math.pi / 4)

    def test_clamped_after_flattening(self, sheet_a):
        linkage = linkage_state(sheet_a, 27 * MM)
        assert linkage.clamped
        assert math.tan(linkage.link_angle) == pytest.approx(
            sheet_a.attachment_half_width / (sheet_a.radius + 13.5 * MM), rel=1e-12
        )


class TestDiscreteForce:
    def test_zero_at_rest(self, sheet_a):
        assert discrete_force(sheet_a, 0.0) == 0.0

    def test_positive_when_pulled(self, sheet_a):
        assert discrete_force(sheet_a, 10 * MM) > 0.0

    def test_linear_in_modulus(self, sheet_a):
        stiffer = scale_modulus(sheet_a, 2.0)
        assert discrete_force(stiffer, 12 * MM) == pytest.approx(
            2 * discrete_force(sheet_a, 12 * MM), rel=1e-12
        )

    def test_matches_step_by_step_linkage(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            preset = rng.choice(["A", "B", "C", "D"])
            n_discrete = int(rng.choice([1, 3, 5, 7, 9, 11, 13, 15]))
            sheet = sheet_preset(preset, n_discrete=n_discrete)
            delta_x = rng.uniform(0.5, 30.0) * MM
            b = solve_semi_minor(sheet.radius, delta_x)
            stepwise = discrete_force_from_linkage(
                loaded_arches(sheet, delta_x, b), linkage_state(sheet, delta_x, b)
            )
            assert stepwise == pytest.approx(discrete_force(sheet, delta_x, b), rel=1e-10)

    def test_matches_linkage_on_random_geometry(self):
        rng = np.random.default_rng(12)
        for _ in range(100):
            base = sheet_preset(rng.choice(["A", "B", "C", "D"]),
                                n_discrete=int(rng.choice([1, 3, 5, 7, 9, 11])))
            radius = rng.uniform(8.0, 60.0) * MM
            section = make_cross_section(rng.uniform(0.3, 2.0) * MM, rng.uniform(0.1, 2.0) * MM)
            sheet = replace_sheet(
                base,
                radius=radius,
                boundary_section=make_cross_section(rng.uniform(0.3, 2.0) * MM,
                                                    rng.uniform(0.1, 2.0) * MM),
                ribbon_section=section,
                attachment_half_width=rng.uniform(0.05, 0.5) * radius,
            )
            delta_x = rng.uniform(0.01, 0.99) * full_flattening_displacement(radius)
            b = solve_semi_minor(radius, delta_x)
            stepwise = discrete_force_from_linkage(
                loaded_arches(sheet, delta_x, b), linkage_state(sheet, delta_x, b)
            )
            assert stepwise == pytest.approx(discrete_force(sheet, delta_x, b), rel=1e-10)

    def test_more_ribbons_more_force(self):
        few = sheet_preset("A", n_discrete=3)
        many = sheet_preset("A", n_discrete=9)
        assert discrete_force(many, 10 * MM) > discrete_force(few, 10 * MM)

    def test_uses_supplied_semi_minor(self, sheet_a):
        b = solve_semi_minor(sheet_a.radius, 10 * MM)
        assert discrete_force(sheet_a, 10 * MM, b) == discrete_force(sheet_a, 10 * MM)

    def test_frozen_arches(self, sheet_a):
        arch = loaded_arches(sheet_a, 5 * MM)[0]
        with pytest.raises(dataclasses.FrozenInstanceError):
            arch.compression = 0.0

"""
@file sheet.py
@brief Domain types, unit helpers, materials registry and sheet presets

Shared vocabulary of the engine: every other module consumes a SheetSpec and
produces BoundaryState / ForceBreakdown values defined here.

@author Kirigami-Actuation team
@date 2026-10-17
@version 1.0

@details
**Units:** all values are strict SI (m, Pa, N). The CLI and the config
loader accept mm and MPa and convert with mm_to_m() / mpa_to_pa() at the
boundary.

**Presets:** sheets A-D reproduce the four fabricated sheets of the
validation campaign (material, radius, thickness, ribbon width). The number
of discrete ribbons, the mesh layout, the mesh section length and the
attachment half-width were never published; presets fill them with the
defaults below and list them in SheetSpec.assumed_fields so `--explain` can
flag them.

All types are frozen dataclasses. The materials registry is a module-level
dictionary filled at import with TPU and PET and extended once at startup
by the config loader.
"""

import dataclasses
import logging
import math
from dataclasses import dataclass, field

from src.core.constants import MM, MPA, GPA
from src.core.errors import InvalidArgumentError, NotFoundError

logger = logging.getLogger(__name__)


def mm_to_m(value):
    return value * MM


def m_to_mm(value):
    return value / MM


# nextafter steps tried around mm_to_m(value_mm)
_GRID_SEARCH_STEPS = 64


def mm_grid_to_m(value_mm):
    """
    Metre value of a length given in mm, stable under a mm round trip.

    @param value_mm float Length (mm)

    @return float x with m_to_mm(x) == value_mm whenever such a float exists.
            mm_to_m(value_mm) is returned when it qualifies, otherwise the
            smallest qualifying float; without any, plain mm_to_m(value_mm).

    @details
    Curve displacements are snapped with this function and measurement
    tables are read back with it, so a displacement written in mm and read
    again lands on the very same metre value.
    """
    value = mm_to_m(value_mm)
    if m_to_mm(value) == value_mm:
        return value
    upward = m_to_mm(value) < value_mm
    candidate = value
    for _ in range(_GRID_SEARCH_STEPS):
        candidate = math.nextafter(candidate, math.inf if upward else -math.inf)
        converted = m_to_mm(candidate)
        if converted == value_mm:
            break
        if (converted > value_mm) == upward:
            # crossed value_mm: no float maps onto it
            return value
    else:
        return value
    while m_to_mm(math.nextafter(candidate, -math.inf)) == value_mm:
        candidate = math.nextafter(candidate, -math.inf)
    return candidate


def mpa_to_pa(value):
    return value * MPA


def pa_to_mpa(value):
    return value / MPA


# ---------------------------------------------------------------------------
# Materials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Material:
    """
    @class Material
    @brief Named linear-elastic material

    @param name str Registry key, non-empty
    @param youngs_modulus float Young's modulus E in Pa, strictly positive
    """
    name: str
    youngs_modulus: float

    def __post_init__(self):
        if not self.name or not self.name.strip():
            raise InvalidArgumentError("Material name must be non-empty")
        if not self.youngs_modulus > 0:
            raise InvalidArgumentError(
                f"Young's modulus of '{self.name}' must be > 0, got {self.youngs_modulus}"
            )


# Measured moduli of the printed TPU and of the PET film
MATERIALS = {
    "TPU": Material("TPU", 14.77 * MPA),
    "PET": Material("PET", 3.57 * GPA),
}


def register_material(material, replace=False):
    """
    Add a material to the registry.

    @param material Material Material to register
    @param replace bool Allow overwriting a different material of the same name

    @return Material The registered material

    @throws InvalidArgumentError if the name is taken by a different material
    """
    existing = MATERIALS.get(material.name)
    if existing is not None and existing != material and not replace:
        raise InvalidArgumentError(
            f"Material '{material.name}' is already registered with "
            f"E = {pa_to_mpa(existing.youngs_modulus):g} MPa"
        )
    MATERIALS[material.name] = material
    logger.debug(f"Registered material {material.name} (E = {material.youngs_modulus:g} Pa)")
    return material


def lookup_material(name):
    """
    Return the registered material called `name`.

    @throws NotFoundError listing the available names
    """
    try:
        return MATERIALS[name]
    except KeyError:
        raise NotFoundError("material", name, MATERIALS.keys()) from None


def available_materials():
    return sorted(MATERIALS)


# ---------------------------------------------------------------------------
# Cross-sections
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CrossSection:
    """
    @class CrossSection
    @brief Rectangular ribbon cross-section

    second_moment = w t^3 / 12 and area = w t are derived, never passed in.
    Use make_cross_section() to build one.
    """
    width: float
    thickness: float
    second_moment: float = field(init=False)
    area: float = field(init=False)

    def __post_init__(self):
        if not (self.width > 0 and self.thickness > 0):
            raise InvalidArgumentError(
                f"Cross-section dimensions must be > 0, got width={self.width}, "
                f"thickness={self.thickness}"
            )
        object.__setattr__(self, "second_moment", self.width * self.thickness ** 3 / 12.0)
        object.__setattr__(self, "area", self.width * self.thickness)


def make_cross_section(width, thickness):
    """
    Build a rectangular cross-section.

    @param width float Section width (m)
    @param thickness float Section thickness (m)

    @return CrossSection with I = w t^3 / 12 and A = w t

    @throws InvalidArgumentError for non-positive dimensions
    """
    return CrossSection(width, thickness)


# ---------------------------------------------------------------------------
# Sheet description
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SheetSpec:
    """
    @class SheetSpec
    @brief Complete geometric and material description of one kirigami sheet

    @details
    - radius: rest radius r of the circular boundary ribbon (m)
    - boundary_section / ribbon_section: cross-sections of the boundary
      ribbon and of the discrete and mesh ribbons
    - n_discrete: number of discrete ribbons n_d (odd, so a central ribbon exists)
    - mesh_counts: n_m,i, one per discrete ribbon, index 0 = ribbon next to
      the boundary attachment
    - mesh_section_length: l_m (m)
    - attachment_half_width: b_min, half-width of the rigid pulling attachment (m)
    - assumed_fields: names of fields holding non-published defaults
    """
    radius: float
    boundary_section: CrossSection
    ribbon_section: CrossSection
    n_discrete: int
    mesh_counts: tuple
    mesh_section_length: float
    attachment_half_width: float
    material: Material
    name: str = "custom"
    assumed_fields: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "mesh_counts", tuple(int(n) for n in self.mesh_counts))
        object.__setattr__(self, "assumed_fields", frozenset(self.assumed_fields))

        if not self.radius > 0:
            raise InvalidArgumentError(f"radius must be > 0, got {self.radius}")
        if self.n_discrete < 1 or self.n_discrete % 2 == 0:
            raise InvalidArgumentError(
                f"n_discrete must be odd and >= 1, got {self.n_discrete}"
            )
        if len(self.mesh_counts) != self.n_discrete:
            raise InvalidArgumentError(
                f"mesh_counts needs {self.n_discrete} entries, got {len(self.mesh_counts)}"
            )
        if any(n < 1 for n in self.mesh_counts):
            raise InvalidArgumentError(f"mesh_counts entries must be >= 1, got {self.mesh_counts}")
        if not 0 < self.attachment_half_width < self.radius:
            raise InvalidArgumentError(
                f"attachment_half_width must lie in (0, radius), got {self.attachment_half_width}"
            )
        if not self.mesh_section_length > 0:
            raise InvalidArgumentError(
                f"mesh_section_length must be > 0, got {self.mesh_section_length}"
            )
        if self.mesh_counts[0] != 1:
            # The boundary couples to the first ribbon through a single central mesh
            logger.warning(f"Sheet {self.name}: n_m,1 = {self.mesh_counts[0]} (convention is 1)")

    @property
    def youngs_modulus(self):
        return self.material.youngs_modulus

    @property
    def central_index(self):
        """1-based index of the central discrete ribbon, ceil(n_d / 2)."""
        return (self.n_discrete + 1) // 2


def replace_sheet(sheet, **changes):
    """dataclasses.replace() wrapper that drops overridden names from assumed_fields."""
    assumed = set(sheet.assumed_fields) - set(changes)
    changes.setdefault("assumed_fields", frozenset(assumed))
    return dataclasses.replace(sheet, **changes)


def scale_modulus(sheet, factor):
    """Same sheet geometry with Young's modulus multiplied by `factor`."""
    material = Material(f"{sheet.material.name}x{factor:g}", sheet.youngs_modulus * factor)
    return dataclasses.replace(sheet, material=material)


# ---------------------------------------------------------------------------
# State and result types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryState:
    """Deformed boundary ellipse at displacement delta_x (all in m)."""
    displacement: float
    semi_major: float
    semi_minor: float

    def __post_init__(self):
        if self.displacement < 0:
            raise InvalidArgumentError(f"displacement must be >= 0, got {self.displacement}")
        if not 0 <= self.semi_minor <= self.semi_major:
            raise InvalidArgumentError(
                f"semi_minor must lie in [0, semi_major], got b={self.semi_minor}, "
                f"a={self.semi_major}"
            )


@dataclass(frozen=True)
class ForceBreakdown:
    """
    @class ForceBreakdown
    @brief Tensile force components at one displacement (N)

    f_tensile is always the exact float sum f_boundary + f_discrete + f_mesh;
    build instances with ForceBreakdown.assemble().
    """
    displacement: float
    f_boundary: float
    f_discrete: float
    f_mesh: float
    f_tensile: float
    semi_major: float = math.nan
    semi_minor: float = math.nan
    regime: str = "bend"
    theta_clamped: bool = False

    def __post_init__(self):
        if self.f_tensile != self.f_boundary + self.f_discrete + self.f_mesh:
            raise InvalidArgumentError("f_tensile must equal the sum of its components")
        if min(self.f_boundary, self.f_discrete, self.f_mesh) < 0:
            raise InvalidArgumentError("force components must be >= 0")

    @classmethod
    def assemble(cls, displacement, f_boundary, f_discrete, f_mesh, **extra):
        return cls(
            displacement=displacement,
            f_boundary=f_boundary,
            f_discrete=f_discrete,
            f_mesh=f_mesh,
            f_tensile=f_boundary + f_discrete + f_mesh,
            **extra,
        )


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------

# (material, radius mm, thickness mm, ribbon width mm) of the fabricated sheets
_TABLE_SHEETS = {
    "A": ("TPU", 22.24, 1.0, 1.0),
    "B": ("TPU", 22.24, 1.5, 1.0),
    "C": ("TPU", 16.68, 1.0, 0.75),
    "D": ("PET", 22.14, 0.25, 0.8),
}

PRESET_N_DISCRETE = 9
PRESET_ATTACHMENT_HALF_WIDTH_MM = 5.0
PRESET_ASSUMED_FIELDS = frozenset(
    {"n_discrete", "mesh_counts", "mesh_section_length", "attachment_half_width"}
)


def default_mesh_counts(n_discrete):
    """[1, 2, 2, ...]: one central mesh at the boundary, two per gap after."""
    return (1,) + (2,) * (n_discrete - 1)


def default_mesh_section_length(radius, mesh_counts):
    """l_m = l_central / (max n_m + 1), the central ribbon being 2r long."""
    return 2.0 * radius / (max(mesh_counts) + 1)


def preset_ids():
    return sorted(_TABLE_SHEETS)


def sheet_preset(preset_id, n_discrete=None, mesh_counts=None,
                 mesh_section_length=None, attachment_half_width=None):
    """
    Build one of the four reference sheets.

    @param preset_id str One of A, B, C, D
    @param n_discrete int Override of the default ribbon count (9)
    @param mesh_counts sequence Override of the default mesh layout
    @param mesh_section_length float Override of l_m (m)
    @param attachment_half_width float Override of b_min (m)

    @return SheetSpec Boundary and ribbons share the published
            (ribbon width, thickness) section.

    @throws NotFoundError for an unknown id
    """
    try:
        material_name, radius_mm, thickness_mm, width_mm = _TABLE_SHEETS[preset_id]
    except KeyError:
        raise NotFoundError("sheet preset", preset_id, _TABLE_SHEETS.keys()) from None

    assumed = set(PRESET_ASSUMED_FIELDS)
    if n_discrete is not None:
        assumed.discard("n_discrete")
    else:
        n_discrete = PRESET_N_DISCRETE
    if mesh_counts is not None:
        assumed.discard("mesh_counts")
    else:
        mesh_counts = default_mesh_counts(n_discrete)
    radius = mm_to_m(radius_mm)
    if mesh_section_length is not None:
        assumed.discard("mesh_section_length")
    else:
        mesh_section_length = default_mesh_section_length(radius, mesh_counts)
    if attachment_half_width is not None:
        assumed.discard("attachment_half_width")
    else:
        attachment_half_width = mm_to_m(PRESET_ATTACHMENT_HALF_WIDTH_MM)

    section = make_cross_section(mm_to_m(width_mm), mm_to_m(thickness_mm))
    return SheetSpec(
        radius=radius,
        boundary_section=section,
        ribbon_section=section,
        n_discrete=n_discrete,
        mesh_counts=tuple(mesh_counts),
        mesh_section_length=mesh_section_length,
        attachment_half_width=attachment_half_width,
        material=lookup_material(material_name),
        name=preset_id,
        assumed_fields=frozenset(assumed),
    )

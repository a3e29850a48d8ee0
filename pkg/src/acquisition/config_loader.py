"""
@file config_loader.py
@brief INI configuration loading: extra materials, named sheets, preset defaults

@author Kirigami-Actuation team
@date 2026-10-17
@version 1.0

@details
The configuration file is a plain INI file read with configparser:

@code
[material:PLA]
youngs_modulus_mpa = 3500

[sheet:thin_tpu]
base = A
thickness_mm = 0.75

[preset_defaults]
n_discrete = 7
attachment_half_width_mm = 4
@endcode

Lengths are given in mm and moduli in MPa; everything is converted to SI on
load. Materials are registered in the global registry once, when the file is
loaded. Sheets may start from a preset (`base`) or be fully described; fields
left out fall back to the preset defaults and are reported as assumed.

See docs/config.md for the complete schema.
"""

import configparser
import logging
from dataclasses import dataclass, field

from src.core.errors import ConfigError, InvalidArgumentError, NotFoundError
from src.mechanics.sheet import (
    PRESET_ASSUMED_FIELDS,
    PRESET_ATTACHMENT_HALF_WIDTH_MM,
    PRESET_N_DISCRETE,
    Material,
    SheetSpec,
    default_mesh_counts,
    default_mesh_section_length,
    lookup_material,
    make_cross_section,
    mm_to_m,
    mpa_to_pa,
    preset_ids,
    register_material,
    sheet_preset,
)

logger = logging.getLogger(__name__)

MATERIAL_PREFIX = "material:"
SHEET_PREFIX = "sheet:"
PRESET_DEFAULTS_SECTION = "preset_defaults"

SHEET_KEYS = {
    "base", "material", "radius_mm", "thickness_mm", "ribbon_width_mm",
    "boundary_width_mm", "boundary_thickness_mm", "n_discrete", "mesh_counts",
    "mesh_section_length_mm", "attachment_half_width_mm",
}
REQUIRED_SHEET_KEYS = ("material", "radius_mm", "thickness_mm", "ribbon_width_mm")
PRESET_DEFAULT_KEYS = {
    "n_discrete", "mesh_counts", "mesh_section_length_mm", "attachment_half_width_mm",
}


@dataclass
class LoadedConfig:
    """
    @class LoadedConfig
    @brief Parsed configuration file

    @param materials dict name -> Material declared by the file
    @param sheets dict name -> SheetSpec, in file order
    @param preset_defaults dict keyword overrides passed to sheet_preset()
    @param path str File the configuration was read from
    """
    materials: dict = field(default_factory=dict)
    sheets: dict = field(default_factory=dict)
    preset_defaults: dict = field(default_factory=dict)
    path: str = None


# ---------------------------------------------------------------------------
# Value parsing
# ---------------------------------------------------------------------------

def _float(section, key, section_name):
    raw = section[key].strip()
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{key} = '{raw}' is not a number", section_name) from None


def _int(section, key, section_name):
    raw = section[key].strip()
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{key} = '{raw}' is not an integer", section_name) from None


def _counts(section, key, section_name):
    raw = section[key]
    try:
        return tuple(int(item) for item in raw.split(",") if item.strip())
    except ValueError:
        raise ConfigError(f"{key} = '{raw.strip()}' is not a comma separated list of integers",
                          section_name) from None


def _check_keys(section, allowed, section_name):
    unknown = sorted(set(section.keys()) - allowed)
    if unknown:
        raise ConfigError(
            f"unknown keys {', '.join(unknown)} (allowed: {', '.join(sorted(allowed))})",
            section_name,
        )


# ---------------------------------------------------------------------------
# Sections
# ---------------------------------------------------------------------------

def _parse_material(name, section, section_name):
    _check_keys(section, {"youngs_modulus_mpa"}, section_name)
    if "youngs_modulus_mpa" not in section:
        raise ConfigError("youngs_modulus_mpa is required", section_name)
    try:
        return Material(name, mpa_to_pa(_float(section, "youngs_modulus_mpa", section_name)))
    except InvalidArgumentError as exc:
        raise ConfigError(str(exc), section_name) from exc


def _parse_preset_defaults(section, section_name):
    _check_keys(section, PRESET_DEFAULT_KEYS, section_name)
    defaults = {}
    if "n_discrete" in section:
        defaults["n_discrete"] = _int(section, "n_discrete", section_name)
    if "mesh_counts" in section:
        defaults["mesh_counts"] = _counts(section, "mesh_counts", section_name)
    if "mesh_section_length_mm" in section:
        defaults["mesh_section_length"] = mm_to_m(_float(section, "mesh_section_length_mm", section_name))
    if "attachment_half_width_mm" in section:
        defaults["attachment_half_width"] = mm_to_m(
            _float(section, "attachment_half_width_mm", section_name)
        )
    return defaults


def _parse_sheet(name, section, section_name, preset_defaults):
    """Build one SheetSpec from a [sheet:NAME] section."""
    _check_keys(section, SHEET_KEYS, section_name)

    base_id = section.get("base", "").strip()
    if base_id:
        try:
            base = sheet_preset(base_id, **preset_defaults)
        except NotFoundError as exc:
            raise ConfigError(str(exc), section_name) from exc
        material = base.material
        radius = base.radius
        ribbon_width, ribbon_thickness = base.ribbon_section.width, base.ribbon_section.thickness
        boundary_width, boundary_thickness = base.boundary_section.width, base.boundary_section.thickness
        n_discrete, mesh_counts = base.n_discrete, base.mesh_counts
        mesh_section_length = base.mesh_section_length
        attachment_half_width = base.attachment_half_width
        assumed = set(base.assumed_fields)
    else:
        missing = [key for key in REQUIRED_SHEET_KEYS if key not in section]
        if missing:
            raise ConfigError(f"missing {', '.join(missing)} (or give a base preset)", section_name)
        material = None
        radius = mm_to_m(_float(section, "radius_mm", section_name))
        ribbon_width = boundary_width = mm_to_m(_float(section, "ribbon_width_mm", section_name))
        ribbon_thickness = boundary_thickness = mm_to_m(_float(section, "thickness_mm", section_name))
        n_discrete = PRESET_N_DISCRETE
        mesh_counts = default_mesh_counts(n_discrete)
        mesh_section_length = None
        attachment_half_width = mm_to_m(PRESET_ATTACHMENT_HALF_WIDTH_MM)
        assumed = set(PRESET_ASSUMED_FIELDS)

    if "material" in section:
        try:
            material = lookup_material(section["material"].strip())
        except NotFoundError as exc:
            raise ConfigError(str(exc), section_name) from exc
    if "radius_mm" in section:
        radius = mm_to_m(_float(section, "radius_mm", section_name))
    if "thickness_mm" in section:
        ribbon_thickness = boundary_thickness = mm_to_m(_float(section, "thickness_mm", section_name))
    if "ribbon_width_mm" in section:
        ribbon_width = mm_to_m(_float(section, "ribbon_width_mm", section_name))
        if not base_id and "boundary_width_mm" not in section:
            boundary_width = ribbon_width
    if "boundary_width_mm" in section:
        boundary_width = mm_to_m(_float(section, "boundary_width_mm", section_name))
    if "boundary_thickness_mm" in section:
        boundary_thickness = mm_to_m(_float(section, "boundary_thickness_mm", section_name))

    if "n_discrete" in section:
        n_discrete = _int(section, "n_discrete", section_name)
        assumed.discard("n_discrete")
        if "mesh_counts" not in section:
            mesh_counts = default_mesh_counts(n_discrete)
            assumed.add("mesh_counts")
    if "mesh_counts" in section:
        mesh_counts = _counts(section, "mesh_counts", section_name)
        assumed.discard("mesh_counts")
    if "mesh_section_length_mm" in section:
        mesh_section_length = mm_to_m(_float(section, "mesh_section_length_mm", section_name))
        assumed.discard("mesh_section_length")
    elif mesh_section_length is None or "mesh_section_length" in assumed:
        mesh_section_length = default_mesh_section_length(radius, mesh_counts)
        assumed.add("mesh_section_length")
    if "attachment_half_width_mm" in section:
        attachment_half_width = mm_to_m(_float(section, "attachment_half_width_mm", section_name))
        assumed.discard("attachment_half_width")

    try:
        return SheetSpec(
            radius=radius,
            boundary_section=make_cross_section(boundary_width, boundary_thickness),
            ribbon_section=make_cross_section(ribbon_width, ribbon_thickness),
            n_discrete=n_discrete,
            mesh_counts=mesh_counts,
            mesh_section_length=mesh_section_length,
            attachment_half_width=attachment_half_width,
            material=material,
            name=name,
            assumed_fields=frozenset(assumed),
        )
    except InvalidArgumentError as exc:
        raise ConfigError(str(exc), section_name) from exc


# ---------------------------------------------------------------------------
# Public API
# ---------------------------------------------------------------------------

def parse_config(parser, path=None):
    """
    Turn an already read ConfigParser into a LoadedConfig.

    Materials are parsed and registered first so sheets can refer to them
    regardless of section order.

    @throws ConfigError for malformed sections or values
    """
    config = LoadedConfig(path=path)

    for section_name in parser.sections():
        if section_name.startswith(MATERIAL_PREFIX):
            name = section_name[len(MATERIAL_PREFIX):].strip()
            material = _parse_material(name, parser[section_name], section_name)
            try:
                register_material(material)
            except InvalidArgumentError as exc:
                raise ConfigError(str(exc), section_name) from exc
            config.materials[name] = material

    if parser.has_section(PRESET_DEFAULTS_SECTION):
        config.preset_defaults = _parse_preset_defaults(
            parser[PRESET_DEFAULTS_SECTION], PRESET_DEFAULTS_SECTION
        )

    for section_name in parser.sections():
        if section_name.startswith(SHEET_PREFIX):
            name = section_name[len(SHEET_PREFIX):].strip()
            if not name:
                raise ConfigError("sheet name must not be empty", section_name)
            config.sheets[name] = _parse_sheet(
                name, parser[section_name], section_name, config.preset_defaults
            )
        elif not (section_name.startswith(MATERIAL_PREFIX) or section_name == PRESET_DEFAULTS_SECTION):
            logger.warning(f"Ignoring unknown configuration section [{section_name}]")

    logger.info(
        f"Configuration loaded: {len(config.materials)} materials, {len(config.sheets)} sheets"
    )
    return config


def load_config(path):
    """
    Read and parse a configuration file.

    @param path str Path of the INI file

    @return LoadedConfig

    @throws OSError if the file cannot be read
    @throws ConfigError for syntax errors or malformed sections
    """
    parser = configparser.ConfigParser()
    with open(path, encoding="utf-8") as handle:
        try:
            parser.read_file(handle, source=str(path))
        except configparser.Error as exc:
            raise ConfigError(f"{path}: {exc}") from exc
    logger.info(f"Configuration file: {path}")
    return parse_config(parser, path=str(path))


def resolve_sheet(identifier, config=None):
    """
    Find a sheet by name: configured sheets first, then presets A-D.

    @param identifier str Sheet name or preset id
    @param config LoadedConfig Optional loaded configuration

    @return SheetSpec

    @throws NotFoundError listing every available sheet
    """
    config = config or LoadedConfig()
    if identifier in config.sheets:
        return config.sheets[identifier]
    if identifier in preset_ids():
        return sheet_preset(identifier, **config.preset_defaults)
    raise NotFoundError("sheet", identifier, list(preset_ids()) + list(config.sheets))

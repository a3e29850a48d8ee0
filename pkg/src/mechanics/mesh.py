"""
@file mesh.py
@brief Resistance of the mesh ribbons linking neighbouring discrete ribbons

@author Kirigami-Actuation team
@date 2026-10-17
@version 1.0

@details
Each mesh ribbon is inextensible and bends the section of discrete ribbon it
is attached to like a simply supported beam with a centre load:

    Q = 48 E I delta_m / l_m^3

The tensile load splits evenly over the n_m,i meshes of gap i, so section i
deflects delta_m,i = delta_m,1 / n_m,i. The deflections along the centre
line add up to the sheet displacement, which closes the recursion:

    delta_x = delta_m,1 * sum_i 1 / n_m,i

The first ribbon hangs on the boundary through a single mesh, so the mesh
contribution to the tensile force is F_mesh = Q_1.
"""

import logging
from dataclasses import dataclass

from src.core.errors import InvalidArgumentError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MeshLoadPath:
    """
    @class MeshLoadPath
    @brief Deflections and loads along the mesh chain at one displacement

    per_ribbon_deflection[i] = first_deflection / n_m,i and the entries sum to
    the displacement; per_ribbon_load[i] = first_load / n_m,i.
    """
    first_deflection: float
    per_ribbon_deflection: tuple
    first_load: float
    per_ribbon_load: tuple = ()


def first_section_deflection(delta_x, mesh_counts):
    """
    Deflection of the first mesh section.

    @param delta_x float Sheet displacement (m)
    @param mesh_counts sequence n_m,i >= 1

    @return float delta_x / sum(1 / n_m,i)

    @throws InvalidArgumentError for empty counts, counts < 1 or delta_x < 0
    """
    if not mesh_counts:
        raise InvalidArgumentError("mesh_counts must not be empty")
    if any(n < 1 for n in mesh_counts):
        raise InvalidArgumentError(f"mesh_counts entries must be >= 1, got {list(mesh_counts)}")
    if delta_x < 0:
        raise InvalidArgumentError(f"delta_x must be >= 0, got {delta_x}")
    compliance = sum(1.0 / n for n in mesh_counts)
    return delta_x / compliance


def section_load(sheet, deflection):
    """Centre load of a simply supported section: 48 E I delta / l_m^3."""
    if not sheet.mesh_section_length > 0:
        raise InvalidArgumentError(
            f"mesh_section_length must be > 0, got {sheet.mesh_section_length}"
        )
    stiffness = sheet.youngs_modulus * sheet.ribbon_section.second_moment
    return 48.0 * stiffness * deflection / sheet.mesh_section_length ** 3


def mesh_load_path(sheet, delta_x):
    """Full recursive deflection / load split for the sheet at delta_x."""
    first = first_section_deflection(delta_x, sheet.mesh_counts)
    load = section_load(sheet, first)
    return MeshLoadPath(
        first_deflection=first,
        per_ribbon_deflection=tuple(first / n for n in sheet.mesh_counts),
        first_load=load,
        per_ribbon_load=tuple(load / n for n in sheet.mesh_counts),
    )


def mesh_force(sheet, delta_x):
    """
    Tensile force needed to bend the mesh-loaded ribbon sections.

    @return float F_mesh = Q_1 (N), linear in delta_x, E and I,
            inverse-cubic in l_m
    """
    return section_load(sheet, first_section_deflection(delta_x, sheet.mesh_counts))

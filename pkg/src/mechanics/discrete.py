"""
@file discrete.py
@brief Discrete ribbons: catenary arch geometry and resistance force

@author Kirigami-Actuation team
@date 2026-10-17
@version 1.0

@details
**Layout:** ribbons sit at stations t_i = i / (floor(n_d/2) + 1),
i = 1 .. ceil(n_d/2), measured from the pulled joint towards the minor
axis. The same fraction places the ribbon ends on the boundary, so a ribbon
at station t has rest length l = 2 r t and endpoint gap d_y = 2 b t; the
central ribbon (t = 1) is the longest. Ribbons on the other side of the
minor axis mirror these and are accounted for by the factor 2 in the force.

**Arch:** a buckled ribbon is a catenary with shape parameter alpha:

    l = 2 alpha sinh(d_y / (2 alpha))
    d_z^2 + 2 alpha d_z - (l/2)^2 = 0

Writing u = d_y / (2 alpha) turns the first equation into
sinh(u)/u = l / d_y, whose left side is strictly increasing, so u is found
by bisection. A flat ribbon (d_y = l) has alpha = inf and d_z = 0.

**Force:** each half ribbon is a cantilever whose tip deflection equals the
arch depth:  P sin(phi) = 3 E I d_z / (l/2)^3, phi = atan(d_z / (d_y/2)).
The boundary is modelled as a symmetric four-bar linkage whose links run
from the minor-axis joints to the major-axis joints, at angle
theta = atan2(b, a) to the pull direction. Moment balance of one link and
force balance at the pulled joint give

    F_discrete = 2 sum_i (P_i / tan(theta)) t_i

As b -> 0, 1/tan(theta) diverges; theta is evaluated with max(b, b_min)
because the rigid attachment keeps the joints at least b_min apart.
"""

import dataclasses
import logging
import math
from dataclasses import dataclass

from scipy.optimize import bisect

from src.core.constants import (
    CATENARY_RTOL,
    CATENARY_U_MAX,
    CATENARY_U_MIN,
    CATENARY_XTOL,
    ROOT_MAX_ITERATIONS,
)
from src.core.errors import InvalidArgumentError, NumericalFailureError
from src.mechanics.boundary import semi_major, solve_semi_minor

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RibbonArch:
    """
    @class RibbonArch
    @brief Buckled state of one discrete ribbon

    index is 1-based (1 = nearest the pulled joint, ceil(n_d/2) = central).
    compression is P_i >= 0; the force the ribbon pushes back on the
    boundary with is -P_i.
    """
    index: int
    station: float
    rest_length: float
    endpoint_gap: float
    shape_param: float
    depth: float
    force_angle: float
    compression: float = 0.0

    def __post_init__(self):
        if not 0 < self.endpoint_gap <= self.rest_length:
            raise InvalidArgumentError(
                f"Ribbon {self.index}: endpoint gap {self.endpoint_gap} outside (0, {self.rest_length}]"
            )
        if self.depth < 0 or self.compression < 0:
            raise InvalidArgumentError(f"Ribbon {self.index}: depth and compression must be >= 0")


@dataclass(frozen=True)
class LinkageState:
    """Rigid-link abstraction of the deformed boundary."""
    link_length: float
    link_angle: float
    clamped: bool = False

    def __post_init__(self):
        if not 0 < self.link_angle < math.pi / 2:
            raise InvalidArgumentError(f"link angle must lie in (0, pi/2), got {self.link_angle}")


def ribbon_stations(n_discrete):
    """Moment-arm fractions t_i for i = 1 .. ceil(n_d/2)."""
    denominator = n_discrete // 2 + 1
    return [i / denominator for i in range(1, (n_discrete + 1) // 2 + 1)]


def catenary_length(shape_param, endpoint_gap):
    """Arc length 2 alpha sinh(d_y / (2 alpha)) of a catenary spanning endpoint_gap."""
    if math.isinf(shape_param):
        return endpoint_gap
    return 2.0 * shape_param * math.sinh(endpoint_gap / (2.0 * shape_param))


def catenary_depth(shape_param, rest_length):
    """
    Positive root of d_z^2 + 2 alpha d_z - (l/2)^2 = 0, written as
    (l/2)^2 / (alpha + sqrt(alpha^2 + (l/2)^2)) to avoid cancellation.
    """
    if math.isinf(shape_param):
        return 0.0
    half = rest_length / 2.0
    return half * half / (shape_param + math.hypot(shape_param, half))


def solve_catenary(rest_length, endpoint_gap):
    """
    Solve the arch of a ribbon of length l whose ends are d_y apart.

    @param rest_length float l (m)
    @param endpoint_gap float d_y (m), 0 < d_y <= l

    @return tuple (alpha, d_z); alpha = math.inf and d_z = 0 for a flat ribbon

    @throws InvalidArgumentError if d_y > l or d_y <= 0
    @throws NumericalFailureError if the bisection does not converge
    """
    if not 0 < endpoint_gap:
        raise InvalidArgumentError(f"endpoint gap must be > 0, got {endpoint_gap}")
    if endpoint_gap > rest_length:
        raise InvalidArgumentError(
            f"endpoint gap {endpoint_gap} exceeds rest length {rest_length}"
        )
    if endpoint_gap == rest_length:
        return math.inf, 0.0

    ratio = rest_length / endpoint_gap

    def residual(u):
        return math.sinh(u) / u - ratio

    if residual(CATENARY_U_MAX) < 0:
        raise NumericalFailureError(
            f"Catenary too deep to solve (l/d_y = {ratio:.6g})", residual=residual(CATENARY_U_MAX)
        )
    if residual(CATENARY_U_MIN) >= 0:
        # l and d_y equal to within rounding
        return math.inf, 0.0

    u, result = bisect(residual, CATENARY_U_MIN, CATENARY_U_MAX, xtol=CATENARY_XTOL,
                       maxiter=ROOT_MAX_ITERATIONS, full_output=True, disp=False)
    shape_param = endpoint_gap / (2.0 * u)
    length_residual = catenary_length(shape_param, endpoint_gap) - rest_length
    if not result.converged or abs(length_residual) > CATENARY_RTOL * rest_length:
        raise NumericalFailureError(
            f"Catenary solve failed for l={rest_length:.6g} m, d_y={endpoint_gap:.6g} m",
            residual=length_residual,
        )
    return shape_param, catenary_depth(shape_param, rest_length)


def ribbon_layout(sheet, delta_x, b=None):
    """
    Geometry of the discrete ribbons from the pulled joint to the centre.

    @param sheet SheetSpec
    @param delta_x float Displacement (m)
    @param b float Semi-minor axis, solved when omitted

    @return list of RibbonArch with compression left at 0
    """
    if b is None:
        b = solve_semi_minor(sheet.radius, delta_x)
    arches = []
    for index, station in enumerate(ribbon_stations(sheet.n_discrete), start=1):
        rest_length = 2.0 * sheet.radius * station
        # b is clamped at 0 past full flattening; keep the gap strictly positive
        endpoint_gap = max(2.0 * b * station, rest_length * 1e-12)
        shape_param, depth = solve_catenary(rest_length, endpoint_gap)
        arches.append(RibbonArch(
            index=index,
            station=station,
            rest_length=rest_length,
            endpoint_gap=endpoint_gap,
            shape_param=shape_param,
            depth=depth,
            force_angle=math.atan2(depth, endpoint_gap / 2.0),
        ))
    return arches


def ribbon_compression(sheet, arch):
    """
    Axial force P the boundary applies to one ribbon.

    @return float P = 3 E I d_z / ((l/2)^3 sin phi); 0 for a flat ribbon
    """
    if arch.depth == 0.0:
        return 0.0
    stiffness = sheet.youngs_modulus * sheet.ribbon_section.second_moment
    half = arch.rest_length / 2.0
    return 3.0 * stiffness * arch.depth / (half ** 3 * math.sin(arch.force_angle))


def loaded_arches(sheet, delta_x, b=None):
    """ribbon_layout() with each arch's compression filled in."""
    return [
        dataclasses.replace(arch, compression=ribbon_compression(sheet, arch))
        for arch in ribbon_layout(sheet, delta_x, b)
    ]


def linkage_state(sheet, delta_x, b=None):
    """
    Four-bar linkage state of the deformed boundary.

    @return LinkageState with link_length = sqrt(a^2 + b^2) and
            link_angle = atan2(max(b, b_min), a); `clamped` tells whether
            b_min was used
    """
    a = semi_major(sheet.radius, delta_x)
    if b is None:
        b = solve_semi_minor(sheet.radius, delta_x)
    clamped = b < sheet.attachment_half_width
    b_eff = max(b, sheet.attachment_half_width)
    if clamped:
        logger.info(
            f"Sheet {sheet.name}: theta evaluated with b_min at delta_x={delta_x:.6g} m "
            f"(b={b:.6g} m)"
        )
    return LinkageState(link_length=math.hypot(a, b_eff), link_angle=math.atan2(b_eff, a), clamped=clamped)


def discrete_force_from_linkage(arches, linkage):
    """
    Tensile force from the four-bar balance, assembled step by step.

    @param arches list of RibbonArch with compression set
    @param linkage LinkageState

    @return float F_discrete (N)

    @details
    - each ribbon pushes on link 2 with magnitude P_i at distance
      l_link t_i from the pulled joint c: moment P_i l_link t_i cos(theta)
    - the summed moment M_2 is balanced by the horizontal reaction at the
      link end (the vertical one vanishes by symmetry):
      M_2 = R_cx,2 l_link sin(theta)
    - joint c is held by links 2 and 3 symmetrically: F = 2 R_cx,2
    """
    cos_theta = math.cos(linkage.link_angle)
    sin_theta = math.sin(linkage.link_angle)
    moment = sum(
        arch.compression * linkage.link_length * arch.station * cos_theta for arch in arches
    )
    reaction = moment / (linkage.link_length * sin_theta)
    return 2.0 * reaction


def discrete_force(sheet, delta_x, b=None):
    """
    Closed-form tensile force needed to buckle all discrete ribbons.

    @return float 2 sum_i (P_i / tan theta) t_i, 0 at delta_x = 0

    @throws NumericalFailureError propagated from the geometry solvers
    """
    if b is None:
        b = solve_semi_minor(sheet.radius, delta_x)
    arches = loaded_arches(sheet, delta_x, b)
    linkage = linkage_state(sheet, delta_x, b)
    tan_theta = math.tan(linkage.link_angle)
    return 2.0 * sum(arch.compression / tan_theta * arch.station for arch in arches)

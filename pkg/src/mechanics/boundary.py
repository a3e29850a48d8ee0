"""
@file boundary.py
@brief Boundary ribbon geometry (ellipse under displacement) and force

@author Kirigami-Actuation team
@date 2026-10-17
@version 1.0

@details
**Geometry:** pulling the circular boundary (radius r) by delta_x along the
major axis gives a = r + delta_x / 2. The semi-minor axis b follows from
holding the Ramanujan perimeter equal to the rest circumference 2 pi r:

    pi (3(a + b) - sqrt((3a + b)(a + 3b))) = 2 pi r

The residual is strictly increasing in b, so b is found by bisection on
[0, r]. Past full flattening (residual already >= 0 at b = 0) b is clamped
to 0 so sweeps can run into the stretch regime.

**Force:** two regimes.
- bend:    F = (4 E I delta_x / r^3) (pi - 8/pi)^-1   (thin circular ring)
- stretch: F = 2 E A delta_l / (pi r),  delta_l = delta_x - r(pi - 2)

The regime is chosen by comparing b with the attachment half-width b_min.
The ribbon bends while b > b_min. Once b reaches b_min it is held by the
attachment and can no longer bend, so the two flattened halves stretch.
The resulting force is discontinuous at the switch and is a lower bound,
not a smooth model.
"""

import logging
import math

from scipy.optimize import bisect

from src.core.constants import PERIMETER_RTOL, ROOT_MAX_ITERATIONS, SEMI_MINOR_XTOL
from src.core.errors import InvalidArgumentError, NumericalFailureError
from src.mechanics.sheet import BoundaryState

logger = logging.getLogger(__name__)

BEND = "bend"
STRETCH = "stretch"

# (pi - 8/pi): ring flexibility factor under diametral point loads
RING_FACTOR = math.pi - 8.0 / math.pi


def _check_displacement(delta_x):
    if delta_x < 0:
        raise InvalidArgumentError(f"delta_x must be >= 0, got {delta_x}")


def ramanujan_perimeter(a, b):
    """Ramanujan's first approximation of the ellipse perimeter."""
    return math.pi * (3.0 * (a + b) - math.sqrt((3.0 * a + b) * (a + 3.0 * b)))


def semi_major(r, delta_x):
    """
    Semi-major axis after pulling the boundary by delta_x.

    @param r float Rest radius (m)
    @param delta_x float Displacement along the pull axis (m)

    @return float a = r + delta_x / 2
    """
    if not r > 0:
        raise InvalidArgumentError(f"radius must be > 0, got {r}")
    _check_displacement(delta_x)
    return r + delta_x / 2.0


def full_flattening_displacement(r):
    """delta_x at which the perimeter equation yields b = 0: 2r(2/(3 - sqrt 3) - 1)."""
    return 2.0 * r * (2.0 / (3.0 - math.sqrt(3.0)) - 1.0)


def stretch_threshold(r):
    """delta_x beyond which the flattened ribbons must stretch: r(pi - 2)."""
    return r * (math.pi - 2.0)


def solve_semi_minor(r, delta_x):
    """
    Solve the constant-perimeter condition for the semi-minor axis.

    @param r float Rest radius (m)
    @param delta_x float Displacement (m)

    @return float b in [0, r], non-increasing in delta_x

    @throws InvalidArgumentError for r <= 0 or delta_x < 0
    @throws NumericalFailureError if the bisection does not converge or the
            perimeter residual exceeds PERIMETER_RTOL

    @details
    Bisection is unconditionally convergent here: the residual
    P(a, b) - 2 pi r is monotone in b, negative at b = 0 (unless flattened)
    and non-negative at b = r because a >= r.
    """
    a = semi_major(r, delta_x)
    if delta_x == 0:
        return r

    target = 2.0 * math.pi * r

    def residual(b):
        return ramanujan_perimeter(a, b) - target

    if residual(0.0) >= 0.0:
        logger.debug(f"delta_x={delta_x:.6g} m is past full flattening for r={r:.6g} m, b clamped to 0")
        return 0.0

    b, result = bisect(residual, 0.0, r, xtol=SEMI_MINOR_XTOL,
                       maxiter=ROOT_MAX_ITERATIONS, full_output=True, disp=False)
    final = residual(b)
    if not result.converged or abs(final) > PERIMETER_RTOL * target:
        raise NumericalFailureError(
            f"Semi-minor axis solve failed for r={r:.6g} m, delta_x={delta_x:.6g} m "
            f"({result.flag})",
            residual=final,
        )
    logger.debug(f"b({delta_x:.6g}) = {b:.12g} m after {result.iterations} bisections")
    return b


def boundary_state(r, delta_x):
    """Full deformed ellipse (a, b) at delta_x."""
    return BoundaryState(
        displacement=delta_x,
        semi_major=semi_major(r, delta_x),
        semi_minor=solve_semi_minor(r, delta_x),
    )


def bend_force(sheet, delta_x):
    """
    Ring bending force, linear in delta_x, E and I.

    @param sheet SheetSpec Sheet (uses E, boundary I, r)
    @param delta_x float Displacement (m)

    @return float F_bend (N)
    """
    _check_displacement(delta_x)
    stiffness = sheet.youngs_modulus * sheet.boundary_section.second_moment
    return 4.0 * stiffness * delta_x / sheet.radius ** 3 / RING_FACTOR


def stretch_force(sheet, delta_x):
    """
    Hooke stretching of the two flattened halves of the boundary.

    @return float 0 for delta_x <= r(pi - 2), else 2 E A delta_l / (pi r)
    """
    _check_displacement(delta_x)
    delta_l = delta_x - stretch_threshold(sheet.radius)
    if delta_l <= 0:
        return 0.0
    stiffness = sheet.youngs_modulus * sheet.boundary_section.area
    return 2.0 * stiffness * delta_l / (math.pi * sheet.radius)


def boundary_regime(sheet, delta_x, b=None):
    """
    Active branch of the piecewise boundary force.

    @param b float Pre-computed semi-minor axis, solved when omitted

    @return str BEND while b > b_min, STRETCH once b <= b_min
    """
    if b is None:
        b = solve_semi_minor(sheet.radius, delta_x)
    return BEND if b > sheet.attachment_half_width else STRETCH


def boundary_force(sheet, delta_x, b=None):
    """
    Piecewise boundary force: bend_force in the bend regime, stretch_force
    in the stretch regime.

    @throws NumericalFailureError propagated from solve_semi_minor
    """
    if boundary_regime(sheet, delta_x, b) == BEND:
        return bend_force(sheet, delta_x)
    return stretch_force(sheet, delta_x)


def regime_switch_displacement(sheet):
    """
    Displacement at which b reaches b_min, i.e. where the boundary force
    switches from bending to stretching.

    @return float delta_x* (m); unique because b(delta_x) is monotone
    """
    r = sheet.radius
    b_min = sheet.attachment_half_width
    target = 2.0 * math.pi * r

    def residual(a):
        return ramanujan_perimeter(a, b_min) - target

    # P(a, b_min) >= P(a, 0) = pi a (3 - sqrt 3), so the flattening a brackets the root
    a_high = 2.0 * r / (3.0 - math.sqrt(3.0))
    a_star, result = bisect(residual, r, a_high, xtol=SEMI_MINOR_XTOL,
                            maxiter=ROOT_MAX_ITERATIONS, full_output=True, disp=False)
    if not result.converged:
        raise NumericalFailureError("Regime switch solve did not converge", residual=residual(a_star))
    return 2.0 * (a_star - r)

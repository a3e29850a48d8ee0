"""
@file ring_oracle.py
@brief Discretised inextensible elastic ring pulled across a diameter

@author Kirigami-Actuation team
@date 2026-10-17
@version 1.0

@details
Independent check of the boundary bending force. The ring is a closed chain
of n equal segments of length h = 2 pi r / n. The unknowns are the segment
directions psi_j, so every configuration is inextensible by construction.

**Energy:** the turning angle at node j+1 is tau_j = psi_{j+1} - psi_j
(plus 2 pi for the closing node). The rest shape is the circle, so the
bending energy measures curvature change:

    U = EI / (2h) * sum_j (tau_j - 2 pi / n)^2

**Constraints:** nodes 0 and n/2 are the anchors. The chord of the first
half chain must be (D, 0) and that of the second half (-D, 0), with
D = 2 R_poly + delta_x and R_poly the circumradius of the rest polygon. The
two chords together also close the loop and fix the rigid rotation.

**Solver:** projected Newton. Each iteration solves the KKT system with the
Lagrangian Hessian, falls back to a Laplacian-preconditioned direction when
the Newton step is not a descent direction, backtracks until the energy does
not increase, and projects back onto the constraints with Gauss-Newton
corrections. The displacement is reached by continuation in stages of at
most RING_CONTINUATION_FRACTION * r.

**Force:** central difference of the converged energy with step
delta_x * RING_FD_FRACTION, each side re-solved from the converged shape.
The constraint multipliers give the same reaction and are kept on the
solution as a consistency check.

The full ring is simulated, so the quarter symmetry of the converged shape
is a result, not an assumption.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from src.core.constants import (
    LOWER_BOUND_EPSILON,
    RING_CONTINUATION_FRACTION,
    RING_DEFAULT_NODES,
    RING_FD_FRACTION,
    RING_GRADIENT_TOL,
    RING_MAX_ITERATIONS,
    RING_MIN_NODES,
)
from src.core.errors import InvalidArgumentError, NumericalFailureError
from src.mechanics.boundary import bend_force, stretch_threshold

logger = logging.getLogger(__name__)

# Relative energy increase tolerated as rounding noise in the line search
_ENERGY_ROUNDOFF = 1e-13
_PROJECTION_TOL = 1e-12        # fraction of r
_PROJECTION_MAX_STEPS = 50
_LINE_SEARCH_MIN_STEP = 1e-12
_SEGMENT_LENGTH_RTOL = 1e-8


# ---------------------------------------------------------------------------
# Ring description
# ---------------------------------------------------------------------------

def _rest_angles(n_nodes):
    """Segment directions of the rest polygon, node 0 at (-R, 0), counter-clockwise."""
    return 2.0 * math.pi * (np.arange(n_nodes) + 0.5) / n_nodes - math.pi / 2.0


def _node_positions(segment_angles, segment_length, chord):
    """Node coordinates with node 0 at (-chord/2, 0)."""
    steps = segment_length * np.column_stack((np.cos(segment_angles), np.sin(segment_angles)))
    positions = np.empty_like(steps)
    positions[0] = (-chord / 2.0, 0.0)
    positions[1:] = positions[0] + np.cumsum(steps[:-1], axis=0)
    return positions


@dataclass(frozen=True, eq=False)
class RingModel:
    """
    @class RingModel
    @brief Discretised elastic ring at rest

    node_positions is the cyclic (n, 2) array of the rest polygon; every
    segment, including the closing one, has length 2 pi r / n.
    """
    n_nodes: int
    radius: float
    bending_stiffness: float
    node_positions: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.n_nodes < RING_MIN_NODES or self.n_nodes % 4:
            raise InvalidArgumentError(
                f"n_nodes must be a multiple of 4 and >= {RING_MIN_NODES}, got {self.n_nodes}"
            )
        if not self.radius > 0 or not self.bending_stiffness > 0:
            raise InvalidArgumentError("ring radius and bending stiffness must be > 0")
        closed = np.vstack((self.node_positions, self.node_positions[:1]))
        lengths = np.linalg.norm(np.diff(closed, axis=0), axis=1)
        worst = np.max(np.abs(lengths / self.segment_length - 1.0))
        if worst > _SEGMENT_LENGTH_RTOL:
            raise InvalidArgumentError(f"ring is not inextensible (segment length error {worst:.3g})")

    @property
    def segment_length(self):
        return 2.0 * math.pi * self.radius / self.n_nodes

    @property
    def polygon_radius(self):
        """Circumradius of the rest polygon, slightly above radius."""
        return self.segment_length / (2.0 * math.sin(math.pi / self.n_nodes))

    @property
    def max_displacement(self):
        """Displacement at which the two half chains would lie flat."""
        return stretch_threshold(self.radius)


def make_ring(radius, bending_stiffness, n_nodes=RING_DEFAULT_NODES):
    """
    Build the rest polygon of an elastic ring.

    @param radius float r (m)
    @param bending_stiffness float EI (N m^2)
    @param n_nodes int Node count, multiple of 4, >= 64

    @return RingModel
    """
    if n_nodes < RING_MIN_NODES or n_nodes % 4:
        raise InvalidArgumentError(
            f"n_nodes must be a multiple of 4 and >= {RING_MIN_NODES}, got {n_nodes}"
        )
    segment_length = 2.0 * math.pi * radius / n_nodes
    chord = segment_length / math.sin(math.pi / n_nodes)
    positions = _node_positions(_rest_angles(n_nodes), segment_length, chord)
    return RingModel(n_nodes, radius, bending_stiffness, positions)


def ring_for_sheet(sheet, n_nodes=RING_DEFAULT_NODES):
    """Ring with the radius and boundary bending stiffness E I of a sheet."""
    stiffness = sheet.youngs_modulus * sheet.boundary_section.second_moment
    return make_ring(sheet.radius, stiffness, n_nodes)


# ---------------------------------------------------------------------------
# Energy and constraints
# ---------------------------------------------------------------------------

def _turning_excess(ring, segment_angles):
    tau = np.roll(segment_angles, -1) - segment_angles
    tau[-1] += 2.0 * math.pi
    return tau - 2.0 * math.pi / ring.n_nodes


def ring_energy(ring, segment_angles):
    """Bending energy (J) of a configuration given by its segment directions."""
    excess = _turning_excess(ring, segment_angles)
    return ring.bending_stiffness / (2.0 * ring.segment_length) * float(np.dot(excess, excess))


def _energy_gradient(ring, segment_angles):
    excess = _turning_excess(ring, segment_angles)
    return ring.bending_stiffness / ring.segment_length * (np.roll(excess, 1) - excess)


def _energy_hessian(ring):
    identity = np.eye(ring.n_nodes)
    laplacian = 2.0 * identity - np.roll(identity, 1, axis=0) - np.roll(identity, -1, axis=0)
    return ring.bending_stiffness / ring.segment_length * laplacian


class _ChordConstraints:
    """
    Half-chain chords divided by h:
        c0 = sum_first cos - D/h    c1 = sum_first sin
        c2 = sum_second cos + D/h   c3 = sum_second sin
    """

    def __init__(self, ring, chord):
        self.half = ring.n_nodes // 2
        self.target = chord / ring.segment_length

    def values(self, psi):
        cos, sin = np.cos(psi), np.sin(psi)
        h = self.half
        return np.array([
            cos[:h].sum() - self.target,
            sin[:h].sum(),
            cos[h:].sum() + self.target,
            sin[h:].sum(),
        ])

    def jacobian(self, psi):
        cos, sin = np.cos(psi), np.sin(psi)
        h = self.half
        jac = np.zeros((4, psi.size))
        jac[0, :h] = -sin[:h]
        jac[1, :h] = cos[:h]
        jac[2, h:] = -sin[h:]
        jac[3, h:] = cos[h:]
        return jac

    def hessian_diagonal(self, psi, multipliers):
        """Diagonal of sum_i multipliers_i * Hessian(c_i)."""
        cos, sin = np.cos(psi), np.sin(psi)
        h = self.half
        diagonal = np.empty_like(psi)
        diagonal[:h] = -multipliers[0] * cos[:h] - multipliers[1] * sin[:h]
        diagonal[h:] = -multipliers[2] * cos[h:] - multipliers[3] * sin[h:]
        return diagonal


def _project(constraints, psi, tolerance):
    """Gauss-Newton projection onto the constraint set; None if it fails."""
    for _ in range(_PROJECTION_MAX_STEPS):
        residual = constraints.values(psi)
        if np.max(np.abs(residual)) < tolerance:
            return psi
        jac = constraints.jacobian(psi)
        try:
            psi = psi - jac.T @ np.linalg.solve(jac @ jac.T, residual)
        except np.linalg.LinAlgError:
            return None
    return None


def _least_squares_multipliers(jac, gradient):
    return np.linalg.solve(jac @ jac.T, -jac @ gradient)


def _kkt_step(hessian, jac, gradient):
    n = gradient.size
    system = np.zeros((n + 4, n + 4))
    system[:n, :n] = hessian
    system[:n, n:] = jac.T
    system[n:, :n] = jac
    rhs = np.concatenate((-gradient, np.zeros(4)))
    solution = np.linalg.solve(system, rhs)
    return solution[:n]


# ---------------------------------------------------------------------------
# Minimisation
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RingSolution:
    """
    @class RingSolution
    @brief Converged equilibrium shape of a ring at one displacement

    energy_history holds the energy after every accepted iteration of the
    final continuation stage; it is non-increasing up to rounding.
    multiplier_force is the anchor reaction read from the constraint
    multipliers.
    """
    displacement: float
    segment_angles: np.ndarray = field(repr=False)
    node_positions: np.ndarray = field(repr=False)
    energy: float = 0.0
    energy_history: tuple = ()
    iterations: int = 0
    gradient_norm: float = 0.0
    multiplier_force: float = 0.0


def _check_displacement(ring, delta_x):
    if delta_x < 0:
        raise InvalidArgumentError(f"delta_x must be >= 0, got {delta_x}")
    if delta_x >= ring.max_displacement:
        raise InvalidArgumentError(
            f"delta_x = {delta_x:.6g} m reaches full flattening of the ring "
            f"(limit {ring.max_displacement:.6g} m)"
        )


def _minimise(ring, hessian, chord, psi, max_iterations):
    """
    Minimise the energy at a fixed anchor chord starting near `psi`.

    @return tuple (psi, history, iterations, gradient norm in N, multipliers)
    """
    h = ring.segment_length
    constraints = _ChordConstraints(ring, chord)
    tolerance = _PROJECTION_TOL * ring.radius / h
    damping = ring.bending_stiffness / h * np.eye(ring.n_nodes)

    psi = _project(constraints, psi, tolerance)
    if psi is None:
        raise NumericalFailureError(f"Could not reach anchor chord {chord:.6g} m")
    energy = ring_energy(ring, psi)
    history = [energy]

    for iteration in range(max_iterations + 1):
        gradient = _energy_gradient(ring, psi)
        jac = constraints.jacobian(psi)
        multipliers = _least_squares_multipliers(jac, gradient)
        gradient_norm = float(np.max(np.abs(gradient + jac.T @ multipliers))) / h
        if gradient_norm < RING_GRADIENT_TOL:
            return psi, history, iteration, gradient_norm, multipliers
        if iteration == max_iterations:
            break

        lagrangian = hessian + np.diag(constraints.hessian_diagonal(psi, multipliers))
        try:
            step = _kkt_step(lagrangian, jac, gradient)
        except np.linalg.LinAlgError:
            step = np.zeros_like(psi)
        if not (gradient @ step < 0 and step @ lagrangian @ step > 0):
            logger.debug(f"Newton step rejected at iteration {iteration}, using preconditioned step")
            step = _kkt_step(hessian + damping, jac, gradient)

        alpha = 1.0
        slack = _ENERGY_ROUNDOFF * abs(energy)
        while alpha >= _LINE_SEARCH_MIN_STEP:
            trial = _project(constraints, psi + alpha * step, tolerance)
            if trial is not None:
                trial_energy = ring_energy(ring, trial)
                if trial_energy <= energy + slack:
                    break
            alpha /= 2.0
        else:
            raise NumericalFailureError(
                f"Ring line search stalled at iteration {iteration}",
                gradient_norm=gradient_norm,
            )
        psi, energy = trial, trial_energy
        history.append(energy)

    raise NumericalFailureError(
        f"Ring minimisation did not converge in {max_iterations} iterations "
        f"(gradient norm {gradient_norm:.3g} N)",
        gradient_norm=gradient_norm,
    )


def _continuation_stages(ring, start, stop):
    stage = RING_CONTINUATION_FRACTION * ring.radius
    count = max(1, math.ceil(abs(stop - start) / stage))
    return [start + (stop - start) * k / count for k in range(1, count + 1)]


def solve_ring_shape(ring, delta_x, max_iterations=RING_MAX_ITERATIONS, initial=None):
    """
    Equilibrium shape of the ring with its anchors pulled apart by delta_x.

    @param ring RingModel
    @param delta_x float Displacement (m), 0 <= delta_x < r(pi - 2)
    @param max_iterations int Iteration budget of each continuation stage
    @param initial RingSolution Converged shape to continue from (defaults
           to the rest circle)

    @return RingSolution

    @throws InvalidArgumentError outside the admissible displacement range
    @throws NumericalFailureError with the final gradient norm when the
            minimiser does not converge
    """
    _check_displacement(ring, delta_x)
    hessian = _energy_hessian(ring)
    rest_chord = 2.0 * ring.polygon_radius

    if initial is None:
        psi, start = _rest_angles(ring.n_nodes), 0.0
    else:
        psi, start = initial.segment_angles.copy(), initial.displacement

    stages = _continuation_stages(ring, start, delta_x)
    total_iterations = 0
    for target in stages:
        psi, history, iterations, gradient_norm, multipliers = _minimise(
            ring, hessian, rest_chord + target, psi, max_iterations
        )
        total_iterations += iterations
    logger.debug(
        f"Ring n={ring.n_nodes} at delta_x={delta_x:.6g} m: {len(stages)} stages, "
        f"{total_iterations} iterations, gradient norm {gradient_norm:.3g} N"
    )

    h = ring.segment_length
    return RingSolution(
        displacement=delta_x,
        segment_angles=psi,
        node_positions=_node_positions(psi, h, rest_chord + delta_x),
        energy=history[-1],
        energy_history=tuple(history),
        iterations=total_iterations,
        gradient_norm=gradient_norm,
        multiplier_force=float(multipliers[2] - multipliers[0]) / h,
    )


def _central_difference_step(ring, delta_x):
    """Step of the central difference at delta_x; 0 at rest."""
    _check_displacement(ring, delta_x)
    step = delta_x * RING_FD_FRACTION
    if delta_x + step >= ring.max_displacement:
        raise InvalidArgumentError(
            f"delta_x = {delta_x:.6g} m is too close to full flattening for a central difference"
        )
    return step


def simulate_ring_bend(ring, delta_x, max_iterations=RING_MAX_ITERATIONS, solution=None):
    """
    Reaction force of the ring at displacement delta_x.

    @param solution RingSolution Converged shape at delta_x, solved when omitted

    @return float dU/d(delta_x) (N) by central difference; 0 at delta_x = 0
    """
    step = _central_difference_step(ring, delta_x)
    if step == 0.0:
        return 0.0
    if solution is None:
        solution = solve_ring_shape(ring, delta_x, max_iterations)
    upper = solve_ring_shape(ring, delta_x + step, max_iterations, initial=solution)
    lower = solve_ring_shape(ring, delta_x - step, max_iterations, initial=solution)
    return (upper.energy - lower.energy) / (2.0 * step)


def ring_symmetry_error(solution):
    """
    Largest deviation of a converged shape from its mirror images about the
    pull axis and about the perpendicular bisector of the anchors (m).
    """
    positions = solution.node_positions
    n = positions.shape[0]
    indices = np.arange(n)
    about_axis = positions[(-indices) % n] * np.array([1.0, -1.0])
    about_bisector = positions[(n // 2 - indices) % n] * np.array([-1.0, 1.0])
    return float(max(
        np.max(np.abs(positions - about_axis)),
        np.max(np.abs(positions - about_bisector)),
    ))


# ---------------------------------------------------------------------------
# Lower-bound check
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LowerBoundPoint:
    """
    Model and oracle force at one displacement; error is set when the oracle
    failed. solution is the converged ring shape at the displacement.
    """
    displacement: float
    model_force: float
    oracle_force: float = math.nan
    slack: float = math.nan
    error: str = None
    solution: RingSolution = field(default=None, repr=False, compare=False)

    @property
    def failed(self):
        return self.error is not None


@dataclass(frozen=True)
class LowerBoundReport:
    sheet_id: str
    n_nodes: int
    points: tuple
    epsilon: float = LOWER_BOUND_EPSILON

    @property
    def passed(self):
        return all(not p.failed and p.slack >= -self.epsilon for p in self.points)

    @property
    def failures(self):
        return [p for p in self.points if p.failed]


def check_lower_bound(sheet, displacements, n_nodes=RING_DEFAULT_NODES, workers=1,
                      max_iterations=RING_MAX_ITERATIONS, epsilon=LOWER_BOUND_EPSILON):
    """
    Compare the ring bending force of the model with the oracle.

    @param sheet SheetSpec
    @param displacements list Positive, ascending displacements (m)
    @param n_nodes int Oracle resolution
    @param workers int Points evaluated concurrently

    @return LowerBoundReport; a point whose simulation fails is recorded with
            its error and the remaining points are still evaluated
    """
    displacements = list(displacements)
    if not displacements:
        raise InvalidArgumentError("check_lower_bound needs at least one displacement")
    if any(d <= 0 for d in displacements):
        raise InvalidArgumentError("displacements must be positive")
    if any(later <= earlier for earlier, later in zip(displacements, displacements[1:])):
        raise InvalidArgumentError("displacements must be ascending")

    ring = ring_for_sheet(sheet, n_nodes)

    def evaluate(delta_x):
        model = bend_force(sheet, delta_x)
        try:
            _central_difference_step(ring, delta_x)
            solution = solve_ring_shape(ring, delta_x, max_iterations)
            oracle = simulate_ring_bend(ring, delta_x, max_iterations, solution=solution)
        except (NumericalFailureError, InvalidArgumentError) as exc:
            logger.error(f"Sheet {sheet.name}: oracle failed at delta_x={delta_x:.6g} m: {exc}")
            return LowerBoundPoint(delta_x, model, error=str(exc))
        slack = oracle - model
        if slack < -epsilon:
            logger.warning(
                f"Sheet {sheet.name}: model exceeds oracle by {-slack:.3g} N at delta_x={delta_x:.6g} m"
            )
        return LowerBoundPoint(delta_x, model, oracle, slack, solution=solution)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            points = list(pool.map(evaluate, displacements))
    else:
        points = [evaluate(delta_x) for delta_x in displacements]

    report = LowerBoundReport(sheet.name, n_nodes, tuple(points), epsilon)
    logger.info(
        f"Lower-bound check for sheet {sheet.name}: {len(points)} points, "
        f"{'passed' if report.passed else 'FAILED'}"
    )
    return report

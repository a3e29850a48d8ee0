"""
@file constants.py
@brief Global constants and environment-driven settings

@author Kirigami-Actuation team
@date 2026-10-17
@version 1.0

@details
Numeric tolerances used by the solvers live here so the tests and the
solvers agree on them. The only environment variable read by the engine is
KIRIGAMI_OUTPUT_DIR, the default directory for sweep curves and oracle dumps.
"""

import os

# Unit conversions (the engine is strict SI internally)
MM = 1e-3
MPA = 1e6
GPA = 1e9

# Default output directory for generated files
OUTPUT_DIR = os.environ.get("KIRIGAMI_OUTPUT_DIR", "output")
LOG_DIR = "logs"

# Semi-minor axis root finder (constant perimeter)
SEMI_MINOR_XTOL = 1e-15            # m, absolute bracket width
PERIMETER_RTOL = 1e-10             # relative perimeter residual accepted
ROOT_MAX_ITERATIONS = 200

# Catenary root finder on u = d_y / (2 alpha)
CATENARY_U_MIN = 1e-9
CATENARY_U_MAX = 50.0
CATENARY_XTOL = 1e-15
CATENARY_RTOL = 1e-10

# Ring oracle
RING_DEFAULT_NODES = 256
RING_MIN_NODES = 64
RING_GRADIENT_TOL = 1e-10          # N
RING_MAX_ITERATIONS = 10_000
RING_CONTINUATION_FRACTION = 0.05  # max continuation stage, fraction of r
RING_FD_FRACTION = 1e-3            # central-difference step, fraction of delta_x
LOWER_BOUND_EPSILON = 1e-6         # N

# Model / CLI defaults (validation protocol and actuator class of the design)
DEFAULT_STEP_MM = 5.0
DEFAULT_MAX_DISPLACEMENT_MM = 25.0
DEFAULT_STEP = DEFAULT_STEP_MM * MM
DEFAULT_MAX_DISPLACEMENT = DEFAULT_MAX_DISPLACEMENT_MM * MM
DEFAULT_ACTUATOR_RATING = 50.0     # N
HUMAN_DIGITS = 6

LOWER_BOUND_BANNER = (
    "F_tensile is a lower bound on the actual actuation force "
    "(boundary + discrete + mesh model)"
)

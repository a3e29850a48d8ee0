"""
@file errors.py
@brief Error hierarchy shared by every module of the kirigami engine

@author Kirigami-Actuation team
@date 2026-10-17
@version 1.0

@details
All errors derive from KirigamiError so the CLI can map them to exit codes
in one place. Each concrete error also derives from the closest builtin
exception, so callers that only know about ValueError or LookupError keep
working.
"""


class KirigamiError(Exception):
    """Base class for every error raised by the engine."""


class InvalidArgumentError(KirigamiError, ValueError):
    """A precondition or a type invariant was violated."""


class NotFoundError(KirigamiError, LookupError):
    """
    A named entity (material, preset, configured sheet) does not exist.

    @param kind str What was looked up ("material", "sheet preset", ...)
    @param name str The name that was not found
    @param available iterable Names that do exist, listed in the message
    """

    def __init__(self, kind, name, available=()):
        self.kind = kind
        self.name = name
        self.available = sorted(available)
        listing = ", ".join(self.available) if self.available else "none"
        super().__init__(f"Unknown {kind} '{name}' (available: {listing})")

    def __str__(self):
        # LookupError would otherwise repr() the message
        return self.args[0]


class NumericalFailureError(KirigamiError, ArithmeticError):
    """
    A root finder or the ring minimiser did not converge.

    @param message str Human readable description
    @param residual float Final residual of the failed solve, if known
    @param gradient_norm float Final gradient norm (N) of a failed minimisation
    @param component str Force component being evaluated when it failed
    @param displacement float Displacement (m) being evaluated when it failed
    """

    def __init__(self, message, residual=None, gradient_norm=None,
                 component=None, displacement=None):
        super().__init__(message)
        self.residual = residual
        self.gradient_norm = gradient_norm
        self.component = component
        self.displacement = displacement

    def with_context(self, component=None, displacement=None):
        """Return a copy carrying the model context of the failure."""
        context = []
        if component is not None:
            context.append(f"component={component}")
        if displacement is not None:
            context.append(f"delta_x={displacement * 1e3:.6g} mm")
        message = f"{self.args[0]} [{', '.join(context)}]" if context else self.args[0]
        return NumericalFailureError(
            message,
            residual=self.residual,
            gradient_norm=self.gradient_norm,
            component=component if component is not None else self.component,
            displacement=displacement if displacement is not None else self.displacement,
        )


class MeasurementFormatError(KirigamiError, ValueError):
    """A measurement table could not be read; `row` is 1-based (header = 1)."""

    def __init__(self, message, row=None):
        self.row = row
        prefix = f"row {row}: " if row is not None else ""
        super().__init__(f"{prefix}{message}")


class ConfigError(KirigamiError, ValueError):
    """A configuration file section is malformed."""

    def __init__(self, message, section=None):
        self.section = section
        prefix = f"[{section}] " if section else ""
        super().__init__(f"{prefix}{message}")


class UsageError(KirigamiError):
    """Command-line usage error (unknown flag, missing argument)."""

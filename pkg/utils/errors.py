"""Exception hierarchy shared by all packages.

Each exception carries the exit status the CLI reports for it.
"""


class GwSqlError(Exception):
    """Base class for all errors raised by this project."""

    exit_code = 1


class ParameterError(GwSqlError, ValueError):
    """Invalid physical parameters, unknown config keys or empty grids."""

    exit_code = 1


class VerificationError(GwSqlError):
    """Oracle and closed-form values disagree beyond tolerance."""

    exit_code = 2


class NumericalError(GwSqlError, ArithmeticError):
    """A numerical guard failed."""

    exit_code = 3


class TruncationError(NumericalError):
    """Fock-space or photon-sector truncation is too small for the requested state."""


class ConvergenceError(NumericalError):
    """A series tail bound was not met or a bisection bracket is invalid."""


class LinearizationError(NumericalError):
    """Inputs are outside the small-phase regime the linearized condition assumes."""

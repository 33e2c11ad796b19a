"""
Exception Hierarchy

All errors raised by diagphase derive from DiagPhaseError so callers (and the
command-line front-end) can catch the package's failures in one place.
"""


class DiagPhaseError(Exception):
    """Base class for every diagphase failure."""


class ExprSyntaxError(DiagPhaseError, ValueError):
    """Malformed expression text.

    Args:
        message (str): Human readable description
        offset (int): Byte offset into the source text where parsing failed
    """

    def __init__(self, message, offset=None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)


class UnknownIdentifierError(ExprSyntaxError):
    """Identifier that is neither the variable, a constant, nor a function."""


class ArityError(ExprSyntaxError):
    """Function called with the wrong number of arguments."""


class EvaluationDomainError(DiagPhaseError, ArithmeticError):
    """Evaluation outside the domain of a sub-expression (sqrt of a negative,
    division by zero, derivative of abs at its kink)."""


class InvalidParameterError(DiagPhaseError, ValueError):
    """Argument outside the range an operation accepts."""


class InfeasibleError(DiagPhaseError):
    """No polynomial degree meets the precision target on some lattice cell."""

    def __init__(self, message, cell=None):
        self.cell = cell
        super().__init__(message)


class UnsupportedGateError(DiagPhaseError):
    """Gate that cannot be decomposed or exported in the requested form."""


class SimulationWidthError(DiagPhaseError):
    """Circuit too wide for the statevector oracle."""


class SolverUnavailableError(DiagPhaseError):
    """The requested MIP solver could not be created."""

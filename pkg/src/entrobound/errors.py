"""Exception hierarchy shared by every module of the package."""


class EntroboundError(Exception):
    """Base class for all package errors."""


class DomainError(EntroboundError, ValueError):
    """An argument lies outside the domain of the requested quantity."""


class ConfigurationError(EntroboundError, ValueError):
    """A parameter combination is unusable, e.g. a divergent weight series."""


class PreconditionError(EntroboundError, ValueError):
    """A numerically verified precondition failed.

    ``actual`` carries the offending computed quantity when one exists.
    """

    def __init__(self, message, actual=None):
        super().__init__(message)
        self.actual = actual


class TruncationError(EntroboundError, ValueError):
    """A finite truncation discards more probability mass than allowed."""

    def __init__(self, message, tail_mass):
        super().__init__(message)
        self.tail_mass = tail_mass


class NumericalError(EntroboundError, ArithmeticError):
    """An iterative routine failed to converge."""

    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


class ParseError(EntroboundError, ValueError):
    """An input file is malformed; the message names the line or field."""

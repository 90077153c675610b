"""Exception hierarchy shared by every module."""


class DisBesselError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(DisBesselError, ValueError):
    """Arguments fall outside the domain where a quantity is defined."""


class PreconditionError(DisBesselError, ValueError):
    """An operation was called outside the regime it supports."""


class RegionError(DomainError):
    """A series was requested outside its region of convergence."""


class ConfigurationError(DisBesselError, ValueError):
    """A simulation configuration violates its invariants."""


class FitError(DisBesselError, ValueError):
    """Not enough structure in the data to fit an envelope."""


class ConvergenceError(DisBesselError, ArithmeticError):
    """A series did not reach its tolerance within the term budget.

    The partial result is kept on ``partial`` so callers can inspect it.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial

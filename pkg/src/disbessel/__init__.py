"""Discrete Bessel functions on the integers and the discrete wave equation."""

from .bessel import BesselSpec, Direction, Kind, evaluate, evaluate_detailed, evaluate_scaled
from .errors import (
    ConfigurationError,
    ConvergenceError,
    DisBesselError,
    DomainError,
    FitError,
    PreconditionError,
    RegionError,
)

__version__ = "0.1.0"

__all__ = [
    "BesselSpec",
    "Direction",
    "Kind",
    "evaluate",
    "evaluate_detailed",
    "evaluate_scaled",
    "ConfigurationError",
    "ConvergenceError",
    "DisBesselError",
    "DomainError",
    "FitError",
    "PreconditionError",
    "RegionError",
]

"""
Custom exceptions for the ant-mill library.

Provides type-safe, descriptive exceptions for error handling throughout
the application.
"""

from src.exceptions.mill_exceptions import (
    AmplitudeError,
    BlowUpError,
    CFLViolationError,
    ConfigError,
    ConfigNotFoundError,
    ConstraintViolationError,
    DomainViolationError,
    EigenSolverError,
    GridError,
    KernelParamsError,
    MillError,
    NumericalError,
    OutputError,
    PoleError,
    SingularDenominatorError,
)

__all__ = [
    "MillError",
    "ConfigError",
    "ConfigNotFoundError",
    "ConstraintViolationError",
    "GridError",
    "DomainViolationError",
    "CFLViolationError",
    "AmplitudeError",
    "KernelParamsError",
    "NumericalError",
    "BlowUpError",
    "EigenSolverError",
    "SingularDenominatorError",
    "PoleError",
    "OutputError",
]

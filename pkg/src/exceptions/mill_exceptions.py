"""
Custom exceptions for the ant-mill analysis library.

This module defines a hierarchy of exceptions for the error conditions
met while validating parameters, evaluating the steady state, integrating
the axisymmetric system and solving the stability eigenproblems. All
exceptions inherit from MillError so a caller can catch everything the
library raises with a single except clause.

The three intermediate classes map one-to-one onto CLI exit codes:
    - ConfigError               -> 2 (malformed or missing config)
    - ConstraintViolationError  -> 3 (a parameter or grid constraint fails)
    - NumericalError            -> 4 (blow-up, eigen-solver failure, ...)

Example:
    try:
        state = steady_service.eval_steady(params, constants, grid)
    except DomainViolationError as e:
        logger.error("grid too wide: %s", e.details["r_star"])
    except MillError as e:
        logger.error("analysis failed: %s", e)
"""

from typing import Any


class MillError(Exception):
    """
    Base exception for all ant-mill errors.

    Attributes:
        message: Human-readable error description.
        error_code: Machine-readable error code.
        details: Optional additional context about the error.
    """

    exit_code: int = 1

    def __init__(
        self,
        message: str,
        error_code: str = "MILL_ERROR",
        details: dict[str, Any] | None = None,
    ) -> None:
        """
        Initialize the MillError.

        Args:
            message: Human-readable error description.
            error_code: Machine-readable error code.
            details: Optional additional context about the error.
        """
        super().__init__(message)
        self.message = message
        self.error_code = error_code
        self.details = details or {}

    def to_dict(self) -> dict[str, Any]:
        """
        Convert exception to a dictionary for diagnostics.

        Returns:
            Dictionary containing error_code, message, and details.
        """
        return {
            "error_code": self.error_code,
            "message": self.message,
            "details": self.details,
        }


class ConfigError(MillError):
    """
    Raised when a run configuration cannot be parsed.

    Covers invalid JSON, missing key groups, wrong value types and unknown
    keys. Numeric constraint failures are not config errors; see
    ConstraintViolationError.

    Attributes:
        config_path: Path to the offending config, if known.
        reason: Specific reason for the failure.
    """

    exit_code = 2

    def __init__(
        self,
        reason: str,
        config_path: str | None = None,
        error_code: str = "CONFIG_ERROR",
    ) -> None:
        self.config_path = config_path
        self.reason = reason

        message = "Malformed run configuration"
        if config_path:
            message += f": {config_path}"
        message += f" - {reason}"

        super().__init__(
            message=message,
            error_code=error_code,
            details={"config_path": config_path, "reason": reason},
        )


class ConfigNotFoundError(ConfigError):
    """Raised when the config file does not exist."""

    def __init__(self, config_path: str) -> None:
        super().__init__(
            reason="file not found",
            config_path=config_path,
            error_code="CONFIG_NOT_FOUND",
        )


class ConstraintViolationError(MillError):
    """
    Raised when model constants, integration constants or the grid violate
    one of the model's sign/positivity constraints.

    Attributes:
        violations: Human-readable constraint messages, one per failed check.
    """

    exit_code = 3

    def __init__(
        self,
        violations: list[str],
        error_code: str = "CONSTRAINT_VIOLATION",
        details: dict[str, Any] | None = None,
    ) -> None:
        """
        Initialize the ConstraintViolationError.

        Args:
            violations: One message per failed constraint, e.g. "beta must be positive".
            error_code: Machine-readable error code.
            details: Optional additional context.
        """
        self.violations = list(violations)
        merged = {"violations": self.violations}
        merged.update(details or {})
        super().__init__(
            message="Constraint violation: " + "; ".join(self.violations),
            error_code=error_code,
            details=merged,
        )


class GridError(ConstraintViolationError):
    """Raised when a radial grid is inadmissible (r_a <= 0, r_b <= r_a, n too small)."""

    def __init__(self, reason: str, **details: Any) -> None:
        super().__init__([reason], error_code="INVALID_GRID", details=details)


class DomainViolationError(ConstraintViolationError):
    """
    Raised when the outer radius reaches the admissible radius r*.

    Beyond r* the closed-form density is nonpositive.

    Attributes:
        r_b: Requested outer radius.
        r_star: Admissible outer radius C2**(1/p).
    """

    def __init__(self, r_b: float, r_star: float) -> None:
        self.r_b = r_b
        self.r_star = r_star
        super().__init__(
            [f"r_b={r_b!r} must be below the admissible radius r*={r_star!r}"],
            error_code="DOMAIN_VIOLATION",
            details={"r_b": r_b, "r_star": r_star},
        )


class CFLViolationError(ConstraintViolationError):
    """Raised when dt exceeds the explicit-scheme limit dr**2/(4D) without override."""

    def __init__(self, dt: float, limit: float) -> None:
        self.dt = dt
        self.limit = limit
        super().__init__(
            [f"dt={dt!r} exceeds the CFL limit dr^2/(4D)={limit!r}"],
            error_code="CFL_VIOLATION",
            details={"dt": dt, "limit": limit},
        )


class AmplitudeError(ConstraintViolationError):
    """Raised when a perturbation amplitude could drive the density negative."""

    def __init__(self, amplitude: float, limit: float) -> None:
        super().__init__(
            [f"|amplitude|={abs(amplitude)!r} must be below 0.1*min(rho)={limit!r}"],
            error_code="AMPLITUDE_TOO_LARGE",
            details={"amplitude": amplitude, "limit": limit},
        )


class KernelParamsError(ConstraintViolationError):
    """Raised when reorientation-kernel parameters break |J| < 1, v > 0 or alpha_turn > 0."""

    def __init__(self, violations: list[str]) -> None:
        super().__init__(violations, error_code="INVALID_KERNEL")


class NumericalError(MillError):
    """
    Base class for runtime numerical failures.

    Attributes:
        operation: The numerical operation that failed.
    """

    exit_code = 4

    def __init__(
        self,
        operation: str,
        reason: str,
        error_code: str = "NUMERICAL_ERROR",
        details: dict[str, Any] | None = None,
    ) -> None:
        self.operation = operation
        self.reason = reason
        merged: dict[str, Any] = {"operation": operation, "reason": reason}
        merged.update(details or {})
        super().__init__(
            message=f"Numerical failure in {operation} - {reason}",
            error_code=error_code,
            details=merged,
        )


class BlowUpError(NumericalError):
    """
    Raised when a time step produces non-finite values.

    Attributes:
        step_index: Index of the step that blew up (1-based).
    """

    def __init__(self, step_index: int) -> None:
        self.step_index = step_index
        super().__init__(
            operation="step",
            reason=f"non-finite values at step {step_index}",
            error_code="BLOW_UP",
            details={"step_index": step_index},
        )


class EigenSolverError(NumericalError):
    """Raised when a dense LAPACK driver fails to converge or receives bad input."""

    def __init__(self, operation: str, reason: str) -> None:
        super().__init__(operation=operation, reason=reason, error_code="EIGEN_SOLVER_FAILURE")


class SingularDenominatorError(NumericalError):
    """
    Raised when a pointwise denominator vanishes.

    Attributes:
        node_index: Grid node at which the denominator vanished.
    """

    def __init__(self, operation: str, node_index: int) -> None:
        self.node_index = node_index
        super().__init__(
            operation=operation,
            reason=f"vanishing denominator at node {node_index}",
            error_code="SINGULAR_DENOMINATOR",
            details={"node_index": node_index},
        )


class PoleError(NumericalError):
    """Raised by g_from_rho at s = -1, the chemical-relaxation eigenvalue."""

    def __init__(self) -> None:
        super().__init__(
            operation="g_from_rho",
            reason="s = -1 is a pole of lambda/(s+1)",
            error_code="POLE",
        )


class OutputError(MillError):
    """
    Raised when an output artifact cannot be written.

    Attributes:
        file_path: Path to the artifact being written.
    """

    exit_code = 4

    def __init__(self, file_path: str, reason: str) -> None:
        self.file_path = file_path
        super().__init__(
            message=f"Failed to write {file_path} - {reason}",
            error_code="OUTPUT_ERROR",
            details={"file_path": file_path, "reason": reason},
        )

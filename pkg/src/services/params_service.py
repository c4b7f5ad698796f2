"""
Constraint checks on model and integration constants.

Violations are returned as data (ValidationResult) so every failed
constraint can be reported at once; require_valid turns a non-empty
result into a ConstraintViolationError for callers that must stop.
"""

import logging

from src.exceptions.mill_exceptions import ConstraintViolationError
from src.models.params_models import ModelParams, SteadyStateConstants, ValidationResult

logger = logging.getLogger(__name__)


class ParamsService:
    """
    Validates ModelParams and SteadyStateConstants.

    Example:
        service = ParamsService()
        result = service.validate_params(ModelParams(alpha=1, beta=-1, lambda_=1, b=1))
        result.violations  # ["beta must be positive"]
    """

    def validate_params(self, params: ModelParams) -> ValidationResult:
        """
        Check that every model constant is strictly positive.

        Args:
            params: Model constants.

        Returns:
            ValidationResult naming each offending field.
        """
        checks = [
            ("alpha", params.alpha),
            ("beta", params.beta),
            ("lambda", params.lambda_),
            ("b", params.b),
            ("diffusion", params.diffusion),
        ]
        violations = [f"{name} must be positive" for name, value in checks if not value > 0]
        return ValidationResult(violations=violations)

    def validate_constants(
        self,
        params: ModelParams,
        constants: SteadyStateConstants,
    ) -> ValidationResult:
        """
        Check C2 > 0 and p = C1 + alpha/(beta*lambda) > 0.

        The exponent is recomputed from the parameters rather than trusted
        from constants.p.

        Args:
            params: Model constants that already passed validate_params.
            constants: Integration constants.

        Returns:
            ValidationResult with "C₂ must be positive" and/or "p must be positive".
        """
        violations: list[str] = []
        if not constants.c2 > 0:
            violations.append("C₂ must be positive")
        p = constants.c1 + params.chemo_ratio
        if not p > 0:
            violations.append("p must be positive")
        return ValidationResult(violations=violations)

    def derive_constants(self, params: ModelParams, c1: float, c2: float) -> SteadyStateConstants:
        """
        Validate both parameter sets and return constants with p filled in.

        Raises:
            ConstraintViolationError: Listing every violation found.
        """
        self.require_valid(self.validate_params(params))
        constants = SteadyStateConstants.derive(params, c1, c2)
        self.require_valid(self.validate_constants(params, constants))
        return constants

    def admissible_outer_radius(
        self,
        params: ModelParams,
        constants: SteadyStateConstants,
    ) -> float:
        """
        Radius r* = C2**(1/p) at which the closed-form density vanishes.

        Example:
            >>> params = ModelParams(alpha=1, beta=1, lambda_=1, b=1)
            >>> ParamsService().admissible_outer_radius(
            ...     params, SteadyStateConstants.derive(params, 1.0, 4.0))
            2.0
        """
        p = constants.c1 + params.chemo_ratio
        return float(constants.c2 ** (1.0 / p))

    def require_valid(self, result: ValidationResult) -> None:
        """Raise ConstraintViolationError if result carries violations."""
        if not result.ok:
            logger.debug("constraint violations: %s", result.violations)
            raise ConstraintViolationError(result.violations)

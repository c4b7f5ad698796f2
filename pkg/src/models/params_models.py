"""
Pydantic models for the continuum constants of the ant-mill model.

ModelParams holds the chemotaxis and momentum constants shared by every
analysis; SteadyStateConstants holds the two integration constants of the
radially symmetric steady state together with the derived decay exponent.

Sign and positivity constraints are deliberately NOT enforced by pydantic:
they are reported as data by ParamsService.validate_params and
ParamsService.validate_constants so that a caller can list every violation
at once. Pydantic only guards the structure (types, required keys).
"""

from pydantic import BaseModel, ConfigDict, Field


class ModelParams(BaseModel):
    """
    Continuum constants of the memory-reinforcement chemotaxis system.

    Attributes:
        alpha: Chemotaxis saturation constant.
        beta: Chemotaxis sensitivity.
        lambda_: Chemical deposition rate (JSON key "lambda").
        b: Coupling of the velocity field to the chemical gradient.
        diffusion: Density diffusion constant D; the closed-form steady
            state corresponds to D = 1.
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True, extra="forbid")

    alpha: float = Field(description="Chemotaxis saturation constant (> 0)")
    beta: float = Field(description="Chemotaxis sensitivity (> 0)")
    lambda_: float = Field(alias="lambda", description="Chemical deposition rate (> 0)")
    b: float = Field(description="Gradient coupling of the velocity equation (> 0)")
    diffusion: float = Field(default=1.0, description="Density diffusion constant D (> 0)")

    def with_b(self, b: float) -> "ModelParams":
        """Return a copy with a different gradient coupling, used by b sweeps."""
        return self.model_copy(update={"b": b})

    @property
    def chemo_ratio(self) -> float:
        """The recurring ratio alpha / (beta * lambda)."""
        return self.alpha / (self.beta * self.lambda_)


class SteadyStateConstants(BaseModel):
    """
    Integration constants of the radially symmetric steady state.

    Attributes:
        c1: Flux integration constant C1.
        c2: Amplitude integration constant C2.
        p: Decay exponent c1 + alpha/(beta*lambda); profiles scale as r**(-p).
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    c1: float = Field(description="Flux integration constant C1")
    c2: float = Field(description="Amplitude integration constant C2 (> 0)")
    p: float = Field(description="Derived exponent c1 + alpha/(beta*lambda) (> 0)")

    @classmethod
    def derive(cls, params: ModelParams, c1: float, c2: float) -> "SteadyStateConstants":
        """
        Build constants with the exponent derived from the model parameters.

        Args:
            params: Model constants (beta and lambda must be nonzero).
            c1: Flux integration constant.
            c2: Amplitude integration constant.

        Returns:
            SteadyStateConstants with p = c1 + alpha/(beta*lambda).

        Example:
            >>> params = ModelParams(alpha=1, beta=1, lambda_=1, b=1)
            >>> SteadyStateConstants.derive(params, 0.5, 2.0).p
            1.5
        """
        return cls(c1=c1, c2=c2, p=c1 + params.chemo_ratio)


class ValidationResult(BaseModel):
    """
    Outcome of a constraint check.

    Attributes:
        violations: One human-readable message per failed constraint.
    """

    model_config = ConfigDict(frozen=True)

    violations: list[str] = Field(
        default_factory=list,
        description="Messages such as 'beta must be positive'",
    )

    @property
    def ok(self) -> bool:
        """True when no constraint failed."""
        return not self.violations

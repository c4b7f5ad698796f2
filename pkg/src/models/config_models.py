"""
Run configuration models.

A run is described by one JSON document with the key groups model,
constants, grid, evolve, stability, fredholm and output_dir. These models
only check structure; numeric constraints are checked by the services so
that they surface as constraint violations rather than parse errors.

Example config:
    {
        "model": {"alpha": 1, "beta": 1, "lambda": 1, "b": 1},
        "constants": {"c1": 0.5, "c2": 2.0},
        "grid": {"r_a": 0.5, "r_b_fraction": 0.9, "n": 64},
        "evolve": {"n_steps": 100, "scheme": "rk4", "epsilon1": 1e-3},
        "stability": {"n_modes": [0, 1, 2], "b_sweep": [0.1, 1, 10, 100], "dt_report": 1e-3},
        "fredholm": {"k_values": [0, 0.25, -0.25], "J": [0, 0.5, 0.9], "m": 128},
        "output_dir": "out"
    }
"""

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.models.evolve_models import PerturbationShape, Scheme
from src.models.params_models import ModelParams


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class ConstantsSection(_Section):
    """Integration constants C1 and C2; the exponent is derived."""

    c1: float = Field(description="Flux integration constant C1")
    c2: float = Field(description="Amplitude integration constant C2")


class GridSection(_Section):
    """
    Radial grid settings.

    Exactly one of r_b (absolute) or r_b_fraction (fraction of the
    admissible radius r*) must be given.
    """

    r_a: float = Field(description="Inner radius")
    r_b: float | None = Field(default=None, description="Outer radius")
    r_b_fraction: float | None = Field(default=None, description="Outer radius as a fraction of r*")
    n: int = Field(description="Node count")

    @model_validator(mode="after")
    def check_outer_radius(self) -> "GridSection":
        """Require exactly one way of giving the outer radius."""
        if (self.r_b is None) == (self.r_b_fraction is None):
            raise ValueError("grid needs exactly one of r_b or r_b_fraction")
        return self


class EvolveSection(_Section):
    """Nonlinear evolution settings; dt defaults to the CFL limit."""

    dt: float | None = Field(default=None, description="Time step; None uses dr^2/(4D)")
    n_steps: int = Field(default=100, description="Number of steps")
    scheme: Scheme = Field(default=Scheme.RK4)
    epsilon1: float = Field(default=1e-3, description="Perturbation size relative to min rho0")
    shape: PerturbationShape = Field(default=PerturbationShape.BUMP)
    record_every: int = Field(default=1)
    cfl_override: bool = Field(default=False)


class StabilitySection(_Section):
    """Linear-stability settings."""

    n_modes: list[int] = Field(default_factory=lambda: [0, 1, 2])
    b_sweep: list[float] = Field(default_factory=lambda: [0.1, 1.0, 10.0, 100.0])
    dt_report: float = Field(default=1e-3, description="dt of the amplification report")
    n_directions: int = Field(default=10, description="Random directions of the linearization check")
    epsilon: float = Field(default=1e-6, description="Finite-difference step of the linearization check")


class FredholmSection(_Section):
    """Fredholm nullspace-scan settings; the scan is k_values x J."""

    k_values: list[float] = Field(
        default_factory=lambda: [0.0, 0.25, -0.25, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0]
    )
    J: float | list[float] = Field(default_factory=lambda: [0.0, 0.5, 0.9])
    m: int = Field(default=128)
    v: float = Field(default=1.0)
    alpha_turn: float = Field(default=1.0)

    @property
    def j_values(self) -> list[float]:
        return [self.J] if isinstance(self.J, (int, float)) else list(self.J)


class RunConfig(_Section):
    """Complete description of one experiment."""

    model: ModelParams
    constants: ConstantsSection
    grid: GridSection
    evolve: EvolveSection = Field(default_factory=EvolveSection)
    stability: StabilitySection = Field(default_factory=StabilitySection)
    fredholm: FredholmSection = Field(default_factory=FredholmSection)
    output_dir: str = Field(default="out")

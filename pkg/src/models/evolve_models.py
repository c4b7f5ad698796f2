"""
Models for nonlinear axisymmetric time evolution.
"""

from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.models.field_models import FIELD_NAMES, AxisymState


class Scheme(str, Enum):
    """Explicit time integrators."""

    EULER = "euler"
    RK4 = "rk4"


class PerturbationShape(str, Enum):
    """Density perturbation profiles, both vanishing at the grid ends."""

    BUMP = "bump"
    MODE0_SINE = "mode0_sine"


class EvolveConfig(BaseModel):
    """
    Time-stepping settings.

    Attributes:
        dt: Time step.
        n_steps: Number of steps.
        scheme: Integrator.
        record_every: Record the deviation norm every this many steps.
        cfl_override: Allow dt above dr**2/(4D), logging a warning.
        frozen_fields: Fields whose time derivative is forced to zero.
        keep_snapshots: Store the recorded states in the trajectory.
    """

    model_config = ConfigDict(frozen=True)

    dt: float = Field(gt=0, description="Time step")
    n_steps: int = Field(ge=1, description="Number of steps")
    scheme: Scheme = Field(default=Scheme.RK4)
    record_every: int = Field(default=1, ge=1)
    cfl_override: bool = Field(default=False)
    frozen_fields: tuple[str, ...] = Field(default=())
    keep_snapshots: bool = Field(default=False)

    @field_validator("frozen_fields")
    @classmethod
    def validate_frozen_fields(cls, v: tuple[str, ...]) -> tuple[str, ...]:
        """Only the four state fields can be frozen."""
        unknown = [name for name in v if name not in FIELD_NAMES]
        if unknown:
            raise ValueError(f"unknown fields {unknown}; expected names from {FIELD_NAMES}")
        return v


class Trajectory(BaseModel):
    """
    Recorded deviation history of one evolution.

    Attributes:
        times: Record times, starting at 0.
        deviation_norms: L2 distance from the reference at each record time.
        blowup: True if integration stopped on non-finite values.
        blowup_step: Step index that blew up, if any.
        snapshots: Recorded states when requested.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    times: np.ndarray
    deviation_norms: np.ndarray
    blowup: bool = False
    blowup_step: int | None = None
    snapshots: list[AxisymState] = Field(default_factory=list)

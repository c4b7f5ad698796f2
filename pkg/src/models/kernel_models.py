"""
Models for the angular reorientation kernel and its Fredholm operator.
"""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class KernelParams(BaseModel):
    """
    Parameters of the fixed-speed reorientation model.

    Attributes:
        v: Particle speed (> 0).
        alpha_turn: Turning rate (> 0).
        J: Gradient-bias strength, |J| < 1 keeps the kernel positive.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    v: float = Field(default=1.0, description="Particle speed")
    alpha_turn: float = Field(default=1.0, description="Turning rate")
    J: float = Field(default=0.0, description="Gradient-bias strength")


class FredholmOperator(BaseModel):
    """
    Nystrom discretization of the homogeneous angular Fredholm equation.

    Attributes:
        k: Fourier wavenumber.
        m: Number of angle nodes.
        matrix: Complex (m, m) array.
        kernel: Parameters used for assembly.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    k: float
    m: int
    matrix: np.ndarray
    kernel: KernelParams


class KernelNormReport(BaseModel):
    """Double and single angular integrals of the kernel."""

    model_config = ConfigDict(frozen=True)

    J: float
    m: int
    double_integral: float
    single_integral: float


class NullspaceRow(BaseModel):
    """One (k, J) cell of a nullspace scan; failed cells carry an error."""

    model_config = ConfigDict(frozen=True)

    k: float
    J: float
    m: int
    sigma_min: float | None = None
    error: str | None = None

"""
Models for the linear-stability analysis.

LinearOperator packages the dense generator M of dw/dt = M w, where w
stacks the perturbation fields [rho~, g~, v_r~, v_theta~] node by node
within each block. The active mask marks the degrees of freedom that are
free to evolve; rows of pinned (boundary) dofs are identically zero.
"""

from enum import Enum
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.models.field_models import RadialGrid


class Verdict(str, Enum):
    """Stability verdict rendered from the leading growth rate."""

    STABLE = "stable"
    UNSTABLE = "unstable"
    MARGINAL = "marginal"


class LinearOperator(BaseModel):
    """
    Dense generator of the linearized dynamics for one azimuthal mode.

    Attributes:
        matrix: Square complex array M.
        n: Azimuthal wavenumber.
        active: Boolean mask of free degrees of freedom.
        grid: Grid the operator was assembled on (None for hand-built test operators).
        b: Gradient coupling the operator was assembled with, if any.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    matrix: np.ndarray
    n: int = Field(default=0, description="Azimuthal wavenumber")
    active: np.ndarray
    grid: RadialGrid | None = None
    b: float | None = None

    @model_validator(mode="after")
    def check_shape(self) -> "LinearOperator":
        """Square matrix with a mask of matching length."""
        rows, cols = self.matrix.shape
        if rows != cols:
            raise ValueError(f"operator matrix must be square, got {self.matrix.shape}")
        if self.active.shape != (rows,):
            raise ValueError("active mask length must match the matrix size")
        return self

    @classmethod
    def from_matrix(cls, matrix: Any, n: int = 0) -> "LinearOperator":
        """
        Wrap an arbitrary square matrix with every dof active.

        Example:
            >>> LinearOperator.from_matrix([[-1.0]]).size
            1
        """
        arr = np.atleast_2d(np.asarray(matrix, dtype=complex))
        return cls(matrix=arr, n=n, active=np.ones(arr.shape[0], dtype=bool))

    @property
    def size(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def n_nodes(self) -> int:
        """Nodes per field block (size / 4)."""
        return self.size // 4

    def active_matrix(self) -> np.ndarray:
        """M restricted to the active rows and columns."""
        idx = np.flatnonzero(self.active)
        return self.matrix[np.ix_(idx, idx)]

    def apply(self, vector: np.ndarray) -> np.ndarray:
        """Matrix-vector product M @ vector."""
        return self.matrix @ vector


class PerturbationMode(BaseModel):
    """
    Radial profiles of one modal perturbation e^{st} e^{in theta}.

    Attributes:
        n: Azimuthal wavenumber.
        s: Complex growth rate.
        F: Density profile.
        G: Chemical profile.
        H_r: Radial-velocity profile.
        H_theta: Azimuthal-velocity profile.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: RadialGrid
    n: int
    s: complex
    F: np.ndarray
    G: np.ndarray
    H_r: np.ndarray
    H_theta: np.ndarray

    def stacked(self) -> np.ndarray:
        """Concatenate the profiles in operator block order."""
        return np.concatenate([self.F, self.G, self.H_r, self.H_theta])


class StabilityReport(BaseModel):
    """
    Amplification and spectral summary of one operator.

    Attributes:
        n: Azimuthal wavenumber.
        b: Gradient coupling, when known.
        dt: Time step used for the amplification quantities.
        norm_I_minus_dtM: Spectral norm of I - dt*M.
        spectral_radius_forward: Spectral radius of I + dt*M.
        max_re_eig: Largest real part among the eigenvalues of M.
        verdict: Rendered from max_re_eig with tolerance 1e-10.
    """

    model_config = ConfigDict(frozen=True)

    n: int
    b: float | None = None
    dt: float
    norm_I_minus_dtM: float
    spectral_radius_forward: float
    max_re_eig: float
    verdict: Verdict

    @property
    def norm_reading_stable(self) -> bool:
        """The 'norm of I - dt*M greater than 1 means stable' reading."""
        return self.norm_I_minus_dtM > 1.0


class SweepRow(BaseModel):
    """One (b, n) cell of a stability sweep; failed cells carry an error."""

    model_config = ConfigDict(frozen=True)

    b: float
    n: int
    max_re_eig: float | None = None
    verdict: Verdict | None = None
    error: str | None = None


class CellAnalysis(BaseModel):
    """
    Full result of one (b, n) sweep cell.

    Attributes:
        b: Gradient coupling.
        n: Azimuthal wavenumber.
        spectrum: Eigenvalues sorted by descending real part.
        report: Amplification report, when a report dt was given.
        error: Failure message when the cell could not be computed.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    b: float
    n: int
    spectrum: np.ndarray | None = None
    report: StabilityReport | None = None
    error: str | None = None

    def row(self) -> SweepRow:
        """Summarize as a sweep-table row."""
        if self.spectrum is None or self.spectrum.size == 0:
            return SweepRow(b=self.b, n=self.n, error=self.error or "empty spectrum")
        max_re = float(self.spectrum[0].real)
        return SweepRow(b=self.b, n=self.n, max_re_eig=max_re, verdict=verdict_for(max_re))


VERDICT_TOLERANCE = 1e-10


def verdict_for(max_re_eig: float, tol: float = VERDICT_TOLERANCE) -> Verdict:
    """Stable below -tol, unstable above +tol, marginal in between."""
    if max_re_eig < -tol:
        return Verdict.STABLE
    if max_re_eig > tol:
        return Verdict.UNSTABLE
    return Verdict.MARGINAL


class LinearizationCheck(BaseModel):
    """
    Agreement between the assembled operator and the nonlinear rhs.

    Attributes:
        epsilon: Finite-difference step.
        seed: Seed of the random interior directions.
        relative_errors: ||M d - FD(d)|| / ||M d|| per direction.
    """

    model_config = ConfigDict(frozen=True)

    epsilon: float
    seed: int
    relative_errors: list[float]

    @property
    def max_relative_error(self) -> float:
        return max(self.relative_errors) if self.relative_errors else 0.0

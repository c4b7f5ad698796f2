"""
Grid and field models for radial profiles.

RadialGrid is a scalar-only, hashable value. RadialField and AxisymState
carry numpy arrays and therefore allow arbitrary types; compare them by
their arrays, not with ==.
"""

from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.exceptions.mill_exceptions import GridError
from src.models.params_models import SteadyStateConstants

FIELD_NAMES: tuple[str, ...] = ("rho", "g", "v_r", "v_theta")


class RadialGrid(BaseModel):
    """
    Uniform radial grid on [r_a, r_b].

    Attributes:
        r_a: Inner radius (> 0).
        r_b: Outer radius (> r_a).
        n: Node count (>= 3).

    Raises:
        GridError: On construction, if any of the constraints above fails.

    Example:
        >>> grid = RadialGrid(r_a=1.0, r_b=2.0, n=5)
        >>> grid.dr
        0.25
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    r_a: float = Field(description="Inner radius, strictly positive")
    r_b: float = Field(description="Outer radius, strictly greater than r_a")
    n: int = Field(description="Number of nodes including both endpoints")

    @model_validator(mode="after")
    def check_bounds(self) -> "RadialGrid":
        """Reject grids that cannot carry the polar operators."""
        if not (np.isfinite(self.r_a) and np.isfinite(self.r_b)):
            raise GridError("grid radii must be finite", r_a=self.r_a, r_b=self.r_b)
        if self.r_a <= 0:
            raise GridError("r_a must be positive", r_a=self.r_a)
        if self.r_b <= self.r_a:
            raise GridError("r_b must exceed r_a", r_a=self.r_a, r_b=self.r_b)
        if self.n < 3:
            raise GridError("grid needs at least 3 nodes", n=self.n)
        return self

    @property
    def dr(self) -> float:
        """Uniform node spacing."""
        return (self.r_b - self.r_a) / (self.n - 1)

    @property
    def nodes(self) -> np.ndarray:
        """Node radii r_i = r_a + i*dr."""
        return self.r_a + np.arange(self.n) * self.dr

    @property
    def interior(self) -> slice:
        """Slice selecting every node except the two endpoints."""
        return slice(1, self.n - 1)

    def refined(self) -> "RadialGrid":
        """Grid on the same interval with dr halved (n -> 2n - 1)."""
        return RadialGrid(r_a=self.r_a, r_b=self.r_b, n=2 * self.n - 1)


def _as_node_array(grid: RadialGrid, values: Any, label: str) -> np.ndarray:
    arr = np.asarray(values)
    if arr.shape != (grid.n,):
        raise ValueError(f"{label} must hold {grid.n} values, got shape {arr.shape}")
    return arr


class RadialField(BaseModel):
    """
    One scalar (real or complex) value per grid node.

    Attributes:
        grid: The grid the values live on.
        values: Array of length grid.n.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: RadialGrid
    values: np.ndarray = Field(description="Nodal values, length grid.n")

    @model_validator(mode="before")
    @classmethod
    def coerce_values(cls, data: Any) -> Any:
        if isinstance(data, dict) and "grid" in data and "values" in data:
            grid = data["grid"]
            if isinstance(grid, RadialGrid):
                data = {**data, "values": _as_node_array(grid, data["values"], "values")}
        return data

    @classmethod
    def from_function(cls, grid: RadialGrid, func: Any) -> "RadialField":
        """Sample a vectorized callable at the grid nodes."""
        return cls(grid=grid, values=func(grid.nodes))

    def __add__(self, other: "RadialField") -> "RadialField":
        return RadialField(grid=self.grid, values=self.values + other.values)

    def __mul__(self, scale: complex | float) -> "RadialField":
        return RadialField(grid=self.grid, values=scale * self.values)

    __rmul__ = __mul__


class AxisymState(BaseModel):
    """
    Radially symmetric state of the four-field system.

    Attributes:
        grid: Shared grid of all fields.
        rho: Density profile.
        g: Chemical concentration profile.
        v_r: Radial velocity profile.
        v_theta: Azimuthal velocity profile.
        constants: Integration constants, set only for the closed-form
            steady state so consumers can use analytic derivatives.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: RadialGrid
    rho: np.ndarray
    g: np.ndarray
    v_r: np.ndarray
    v_theta: np.ndarray
    constants: SteadyStateConstants | None = None

    @model_validator(mode="before")
    @classmethod
    def coerce_fields(cls, data: Any) -> Any:
        if isinstance(data, dict) and isinstance(data.get("grid"), RadialGrid):
            grid = data["grid"]
            data = dict(data)
            for name in FIELD_NAMES:
                if name in data:
                    data[name] = _as_node_array(grid, data[name], name).astype(float)
        return data

    @classmethod
    def from_array(
        cls,
        grid: RadialGrid,
        stacked: np.ndarray,
        constants: SteadyStateConstants | None = None,
    ) -> "AxisymState":
        """Build a state from a (4, n) array ordered rho, g, v_r, v_theta."""
        return cls(
            grid=grid,
            rho=stacked[0].copy(),
            g=stacked[1].copy(),
            v_r=stacked[2].copy(),
            v_theta=stacked[3].copy(),
            constants=constants,
        )

    @classmethod
    def zeros(cls, grid: RadialGrid) -> "AxisymState":
        """The origin of state space."""
        return cls.from_array(grid, np.zeros((4, grid.n)))

    def as_array(self) -> np.ndarray:
        """Stack the fields into a (4, n) array ordered rho, g, v_r, v_theta."""
        return np.vstack([self.rho, self.g, self.v_r, self.v_theta])

    def field(self, name: str) -> RadialField:
        """Return one of rho, g, v_r, v_theta as a RadialField."""
        if name not in FIELD_NAMES:
            raise KeyError(f"unknown field {name!r}; expected one of {FIELD_NAMES}")
        return RadialField(grid=self.grid, values=getattr(self, name))

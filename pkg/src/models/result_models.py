"""
Result models for steady-state checks.
"""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.models.field_models import RadialField


class SteadyResiduals(BaseModel):
    """
    Pointwise residuals of the steady equations.

    Attributes:
        mass: (1/r) d/dr[r * flux] with flux = D rho' - rho chi(g) g'.
        chemical: lambda*rho - g.
        momentum: v_theta**2 + b r g'.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    mass: RadialField
    chemical: RadialField
    momentum: RadialField

    def interior_max(self) -> tuple[float, float, float]:
        """Max-norm of each residual, endpoints excluded."""
        inner = self.mass.grid.interior
        return (
            float(np.max(np.abs(self.mass.values[inner]))),
            float(np.max(np.abs(self.chemical.values[inner]))),
            float(np.max(np.abs(self.momentum.values[inner]))),
        )


class IdentityReport(BaseModel):
    """
    Structural identities of a steady state.

    Attributes:
        max_chemical_deviation: max |g - lambda*rho| over all nodes.
        flux_mean: Mean of the radial flux r(D rho' - rho chi g').
        flux_std: Standard deviation of the flux.
        flux_relative_std: flux_std / |flux_mean| (inf if the mean is zero).
        flux_max_deviation: max |flux - flux_mean|.
        analytic_flux: -p*alpha/(beta*lambda) for the closed form, else None.
        max_momentum_deviation: max |v_theta**2 + b r g'| at interior nodes.
        momentum_scale: max |v_theta**2| at interior nodes.
    """

    model_config = ConfigDict(frozen=True)

    max_chemical_deviation: float = Field(description="max |g - lambda rho|")
    flux_mean: float
    flux_std: float
    flux_relative_std: float
    flux_max_deviation: float
    analytic_flux: float | None = None
    max_momentum_deviation: float
    momentum_scale: float

"""
Closed-form radially symmetric steady state and its consistency checks.

The steady state of the mill is

    rho0(r)     = (alpha/(beta lambda)) (C2 r**(-p) - 1)
    g0(r)       = lambda rho0(r)
    v_theta0(r) = sqrt(b C2 p) r**(-p/2)
    v_r         = 0

with p = C1 + alpha/(beta lambda). It solves the equations with unit
diffusion and is positive only below the admissible radius r* = C2**(1/p).

Example:
    service = SteadyStateService()
    state = service.eval_steady(params, constants, RadialGrid(r_a=0.5, r_b=1.4, n=129))
    residuals = service.steady_residual(params, state)
"""

import logging

import numpy as np

from src.exceptions.mill_exceptions import DomainViolationError
from src.models.field_models import AxisymState, RadialField, RadialGrid
from src.models.params_models import ModelParams, SteadyStateConstants
from src.models.result_models import IdentityReport, SteadyResiduals
from src.numerics.finite_differences import ddr_values
from src.numerics.transport import density_rate, radial_flux_values
from src.services.params_service import ParamsService

logger = logging.getLogger(__name__)


class SteadyStateService:
    """
    Evaluates and checks the closed-form steady state.

    Attributes:
        params_service: Constraint checker used before evaluation.
    """

    def __init__(self, params_service: ParamsService | None = None) -> None:
        """
        Initialize the SteadyStateService.

        Args:
            params_service: Optional ParamsService; a new one is created if None.
        """
        self.params_service = params_service or ParamsService()

    def steady_profiles(
        self,
        params: ModelParams,
        constants: SteadyStateConstants,
        r: np.ndarray,
    ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        Evaluate the closed form at arbitrary radii without a domain check.

        Args:
            params: Model constants.
            constants: Integration constants.
            r: Positive radii.

        Returns:
            Tuple (rho0, g0, v_theta0) of arrays shaped like r.
        """
        r = np.asarray(r, dtype=float)
        p = constants.p
        rho0 = params.chemo_ratio * (constants.c2 * r ** (-p) - 1.0)
        g0 = params.lambda_ * rho0
        v_theta0 = np.sqrt(params.b * constants.c2 * p) * r ** (-p / 2.0)
        return rho0, g0, v_theta0

    def eval_steady(
        self,
        params: ModelParams,
        constants: SteadyStateConstants,
        grid: RadialGrid,
    ) -> AxisymState:
        """
        Closed-form steady state sampled on a grid.

        Args:
            params: Model constants.
            constants: Integration constants.
            grid: Grid with r_b below the admissible radius.

        Returns:
            AxisymState with v_r = 0 and constants attached.

        Raises:
            ConstraintViolationError: If params or constants are invalid.
            DomainViolationError: If grid.r_b >= r*.
        """
        self.params_service.require_valid(self.params_service.validate_params(params))
        self.params_service.require_valid(self.params_service.validate_constants(params, constants))

        r_star = self.params_service.admissible_outer_radius(params, constants)
        if grid.r_b >= r_star:
            raise DomainViolationError(r_b=grid.r_b, r_star=r_star)
        if params.diffusion != 1.0:
            logger.warning(
                "closed-form steady state solves D = 1; D = %s leaves a nonzero mass residual",
                params.diffusion,
            )

        rho0, g0, v_theta0 = self.steady_profiles(params, constants, grid.nodes)
        logger.debug("steady state on n=%d nodes, r* = %s", grid.n, r_star)
        return AxisymState(
            grid=grid,
            rho=rho0,
            g=g0,
            v_r=np.zeros(grid.n),
            v_theta=v_theta0,
            constants=constants,
        )

    def steady_residual(self, params: ModelParams, state: AxisymState) -> SteadyResiduals:
        """
        Residuals of the steady mass, chemical and momentum equations.

        The mass residual is the density right-hand side with v_r = 0; the
        momentum residual v_theta**2 + b r g' vanishes when the centripetal
        balance holds.

        Raises:
            SingularDenominatorError: If alpha + beta g is not positive somewhere.
        """
        grid = state.grid
        mass = density_rate(grid, state.rho, state.g, np.zeros(grid.n), params)
        chemical = params.lambda_ * state.rho - state.g
        momentum = state.v_theta**2 + params.b * grid.nodes * ddr_values(grid, state.g)
        return SteadyResiduals(
            mass=RadialField(grid=grid, values=mass),
            chemical=RadialField(grid=grid, values=chemical),
            momentum=RadialField(grid=grid, values=momentum),
        )

    def radial_flux(self, params: ModelParams, state: AxisymState) -> RadialField:
        """Radial flux r (D rho' - rho chi(g) g'), constant in r at steady state."""
        values = radial_flux_values(state.grid, state.rho, state.g, params)
        return RadialField(grid=state.grid, values=values)

    def check_identities(self, params: ModelParams, state: AxisymState) -> IdentityReport:
        """
        Report how well a state satisfies the steady-state identities.

        Flux and momentum statistics use interior nodes only.

        Args:
            params: Model constants.
            state: State to check, typically from eval_steady.

        Returns:
            IdentityReport; analytic_flux is set for closed-form states with D = 1.
        """
        inner = state.grid.interior
        flux = self.radial_flux(params, state).values[inner]
        flux_mean = float(np.mean(flux))
        flux_std = float(np.std(flux))
        relative = flux_std / abs(flux_mean) if flux_mean != 0 else float("inf")

        momentum = self.steady_residual(params, state).momentum.values[inner]
        analytic = None
        if state.constants is not None and params.diffusion == 1.0:
            analytic = -state.constants.p * params.chemo_ratio

        return IdentityReport(
            max_chemical_deviation=float(np.max(np.abs(state.g - params.lambda_ * state.rho))),
            flux_mean=flux_mean,
            flux_std=flux_std,
            flux_relative_std=relative,
            flux_max_deviation=float(np.max(np.abs(flux - flux_mean))),
            analytic_flux=analytic,
            max_momentum_deviation=float(np.max(np.abs(momentum))),
            momentum_scale=float(np.max(state.v_theta[inner] ** 2)),
        )

"""
Pointwise chemotactic transport terms shared by the steady-state checks,
the nonlinear evolver and the operator assembly.

With chi(g) = beta / (alpha + beta g) the density obeys

    rho_t = (1/r) d/dr [ r (D rho' - rho chi(g) g') ] - v_r rho'

which is evaluated in expanded polar form so that every interior row is a
pure central stencil:

    D (rho'' + rho'/r) - [ (rho chi)' g' + rho chi (g'' + g'/r) ] - v_r rho'
"""

import numpy as np

from src.exceptions.mill_exceptions import SingularDenominatorError
from src.models.field_models import RadialGrid
from src.models.params_models import ModelParams
from src.numerics.finite_differences import first_derivative_matrix, second_derivative_matrix


def saturation_denominator(g: np.ndarray, params: ModelParams, operation: str) -> np.ndarray:
    """
    alpha + beta*g, checked to be strictly positive.

    Raises:
        SingularDenominatorError: At the first node where it is not.
    """
    denom = params.alpha + params.beta * g
    bad = np.flatnonzero(~(denom > 0))
    if bad.size:
        raise SingularDenominatorError(operation, int(bad[0]))
    return denom


def chemotactic_sensitivity(g: np.ndarray, params: ModelParams) -> np.ndarray:
    """chi(g) = beta / (alpha + beta g)."""
    return params.beta / saturation_denominator(g, params, "chemotactic_sensitivity")


def radial_flux_values(
    grid: RadialGrid,
    rho: np.ndarray,
    g: np.ndarray,
    params: ModelParams,
) -> np.ndarray:
    """r (D rho' - rho chi(g) g') at every node."""
    d1 = first_derivative_matrix(grid)
    chi = chemotactic_sensitivity(g, params)
    return grid.nodes * (params.diffusion * (d1 @ rho) - rho * chi * (d1 @ g))


def density_rate(
    grid: RadialGrid,
    rho: np.ndarray,
    g: np.ndarray,
    v_r: np.ndarray,
    params: ModelParams,
) -> np.ndarray:
    """
    Right-hand side of the density equation at every node.

    Args:
        grid: Radial grid.
        rho: Density.
        g: Chemical concentration.
        v_r: Radial velocity (zero for the steady mass residual).
        params: Model constants.

    Returns:
        Array of drho/dt values.
    """
    r = grid.nodes
    d1 = first_derivative_matrix(grid)
    d2 = second_derivative_matrix(grid)
    chi = chemotactic_sensitivity(g, params)
    coeff = rho * chi
    drho = d1 @ rho
    dg = d1 @ g
    diffusion = params.diffusion * (d2 @ rho + drho / r)
    taxis = (d1 @ coeff) * dg + coeff * (d2 @ g + dg / r)
    return diffusion - taxis - v_r * drho


def axisym_rates(grid: RadialGrid, stacked: np.ndarray, params: ModelParams) -> np.ndarray:
    """
    Time derivatives of a (4, n) state ordered rho, g, v_r, v_theta.

    Every node is evaluated, endpoints included; callers decide how the
    boundary is treated.

        g_t       = lambda rho - g
        v_r_t     = -v_r v_r' + v_theta**2 / r + b g'
        v_theta_t = -v_r v_theta' - v_r v_theta / r
    """
    rho, g, v_r, v_theta = stacked
    r = grid.nodes
    d1 = first_derivative_matrix(grid)
    rates = np.empty_like(stacked)
    rates[0] = density_rate(grid, rho, g, v_r, params)
    rates[1] = params.lambda_ * rho - g
    rates[2] = -v_r * (d1 @ v_r) + v_theta**2 / r + params.b * (d1 @ g)
    rates[3] = -v_r * (d1 @ v_theta) - v_r * v_theta / r
    return rates

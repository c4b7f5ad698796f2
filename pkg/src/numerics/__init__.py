"""
Numerical kernels: finite-difference stencils and periodic quadrature.
"""

from src.numerics.finite_differences import (
    d2dr2,
    d2dr2_values,
    ddr,
    ddr_values,
    first_derivative_matrix,
    second_derivative_matrix,
)
from src.numerics.quadrature import theta_nodes, theta_weights, trapezoid_theta
from src.numerics.transport import (
    axisym_rates,
    chemotactic_sensitivity,
    density_rate,
    radial_flux_values,
)

__all__ = [
    "ddr",
    "d2dr2",
    "ddr_values",
    "d2dr2_values",
    "first_derivative_matrix",
    "second_derivative_matrix",
    "theta_nodes",
    "theta_weights",
    "trapezoid_theta",
    "axisym_rates",
    "chemotactic_sensitivity",
    "density_rate",
    "radial_flux_values",
]

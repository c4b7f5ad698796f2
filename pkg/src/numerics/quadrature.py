"""
Periodic quadrature on the angle interval [-pi, pi).

On a uniform periodic grid the trapezoid rule reduces to the rectangle
rule with equal weights 2*pi/m; it integrates trigonometric polynomials of
degree below m/2 exactly.
"""

import numpy as np


def theta_nodes(m: int) -> np.ndarray:
    """
    Uniform angles theta_j = -pi + 2*pi*j/m, j = 0..m-1.

    Raises:
        ValueError: If m < 2.
    """
    if m < 2:
        raise ValueError(f"periodic quadrature needs m >= 2 samples, got {m}")
    return -np.pi + 2.0 * np.pi * np.arange(m) / m


def theta_weights(m: int) -> np.ndarray:
    """Periodic trapezoid weights, all equal to 2*pi/m."""
    if m < 2:
        raise ValueError(f"periodic quadrature needs m >= 2 samples, got {m}")
    return np.full(m, 2.0 * np.pi / m)


def trapezoid_theta(samples: np.ndarray) -> complex | float:
    """
    Integrate samples taken at theta_nodes(m) over [-pi, pi).

    Args:
        samples: m values, real or complex.

    Returns:
        The periodic trapezoid sum, real for real input.

    Raises:
        ValueError: If fewer than two samples are given.

    Example:
        >>> trapezoid_theta(np.ones(8))
        6.283185307179586
    """
    values = np.asarray(samples)
    total = theta_weights(values.shape[0]) @ values
    if np.iscomplexobj(total):
        return complex(total)
    return float(total)

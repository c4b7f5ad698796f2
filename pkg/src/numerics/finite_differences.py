"""
Second-order finite-difference operators on a uniform radial grid.

Interior rows use central differences; the first and last rows use
second-order one-sided closures:

    d/dr    boundary rows  [-3, 4, -1] / (2 dr)   and  [1, -4, 3] / (2 dr)
    d2/dr2  boundary rows  [2, -5, 4, -1] / dr^2  and  [-1, 4, -5, 2] / dr^2

The matrices are dense, because the linear-stability operator is assembled
and solved densely. They are cached per grid and returned read-only.
"""

from functools import lru_cache

import numpy as np

from src.models.field_models import RadialField, RadialGrid


@lru_cache(maxsize=32)
def first_derivative_matrix(grid: RadialGrid) -> np.ndarray:
    """
    Dense d/dr matrix for the grid.

    Args:
        grid: Uniform radial grid (n >= 3).

    Returns:
        Read-only (n, n) float array D1 with D1 @ f approximating f'.
    """
    n = grid.n
    mat = np.zeros((n, n))
    idx = np.arange(1, n - 1)
    mat[idx, idx - 1] = -1.0
    mat[idx, idx + 1] = 1.0
    mat[0, :3] = [-3.0, 4.0, -1.0]
    mat[-1, -3:] = [1.0, -4.0, 3.0]
    mat /= 2.0 * grid.dr
    mat.flags.writeable = False
    return mat


@lru_cache(maxsize=32)
def second_derivative_matrix(grid: RadialGrid) -> np.ndarray:
    """
    Dense d2/dr2 matrix for the grid.

    With only three nodes the four-point closure does not fit and the
    boundary rows fall back to the interior [1, -2, 1] stencil.

    Args:
        grid: Uniform radial grid (n >= 3).

    Returns:
        Read-only (n, n) float array D2 with D2 @ f approximating f''.
    """
    n = grid.n
    mat = np.zeros((n, n))
    idx = np.arange(1, n - 1)
    mat[idx, idx - 1] = 1.0
    mat[idx, idx] = -2.0
    mat[idx, idx + 1] = 1.0
    if n >= 4:
        mat[0, :4] = [2.0, -5.0, 4.0, -1.0]
        mat[-1, -4:] = [-1.0, 4.0, -5.0, 2.0]
    else:
        mat[0, :3] = [1.0, -2.0, 1.0]
        mat[-1, -3:] = [1.0, -2.0, 1.0]
    mat /= grid.dr**2
    mat.flags.writeable = False
    return mat


def ddr_values(grid: RadialGrid, values: np.ndarray) -> np.ndarray:
    """Apply d/dr to a raw nodal array (real or complex)."""
    return first_derivative_matrix(grid) @ values


def d2dr2_values(grid: RadialGrid, values: np.ndarray) -> np.ndarray:
    """Apply d2/dr2 to a raw nodal array (real or complex)."""
    return second_derivative_matrix(grid) @ values


def ddr(f: RadialField) -> RadialField:
    """
    First radial derivative of a field.

    Exact on quadratics at every node.

    Example:
        >>> grid = RadialGrid(r_a=1.0, r_b=2.0, n=5)
        >>> ddr(RadialField.from_function(grid, lambda r: r**2)).values
        array([2. , 2.5, 3. , 3.5, 4. ])
    """
    return RadialField(grid=f.grid, values=ddr_values(f.grid, f.values))


def d2dr2(f: RadialField) -> RadialField:
    """Second radial derivative of a field."""
    return RadialField(grid=f.grid, values=d2dr2_values(f.grid, f.values))

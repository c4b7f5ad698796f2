"""
Dense linear-algebra adapter over scipy.linalg.

This module provides the LinalgAdapter class that wraps the LAPACK drivers
exposed by scipy.linalg (general nonsymmetric eigenvalues, singular values,
matrix norms). It maps solver failures to EigenSolverError so callers only
see the library's own exception hierarchy.

Example:
    adapter = LinalgAdapter()
    eigs = adapter.eigenvalues(np.array([[0.0, 1.0], [-1.0, 0.0]]))
    sigma = adapter.min_singular_value(np.diag([5.0, 0.25]))
"""

import logging
from typing import Literal

import numpy as np
import scipy.linalg

from src.exceptions.mill_exceptions import EigenSolverError

logger = logging.getLogger(__name__)

NormKind = Literal["two", "inf", "frobenius"]

_NORM_ORD: dict[str, int | float | str] = {
    "two": 2,
    "inf": np.inf,
    "frobenius": "fro",
}


class LinalgAdapter:
    """
    Adapter for dense eigenvalue, singular-value and norm computations.

    All inputs are converted to complex128 so real and complex operators
    follow the same LAPACK path.
    """

    def _as_square(self, matrix: np.ndarray, operation: str) -> np.ndarray:
        arr = np.asarray(matrix, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise EigenSolverError(operation, f"matrix must be square, got shape {arr.shape}")
        return arr

    def eigenvalues(self, matrix: np.ndarray) -> np.ndarray:
        """
        All eigenvalues of a general square matrix.

        Args:
            matrix: Square real or complex array.

        Returns:
            Complex array of eigenvalues in LAPACK order.

        Raises:
            EigenSolverError: If the matrix is not square, holds non-finite
                entries, or the QR iteration fails to converge.
        """
        arr = self._as_square(matrix, "eigenvalues")
        try:
            return scipy.linalg.eigvals(arr)
        except (scipy.linalg.LinAlgError, ValueError) as e:
            raise EigenSolverError("eigenvalues", str(e)) from e

    def eig(self, matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """
        Eigenvalues and right eigenvectors (columns, unit 2-norm).

        Raises:
            EigenSolverError: As for eigenvalues.
        """
        arr = self._as_square(matrix, "eig")
        try:
            values, vectors = scipy.linalg.eig(arr)
        except (scipy.linalg.LinAlgError, ValueError) as e:
            raise EigenSolverError("eig", str(e)) from e
        return values, vectors

    def singular_values(self, matrix: np.ndarray) -> np.ndarray:
        """Singular values in descending order."""
        arr = np.asarray(matrix, dtype=complex)
        try:
            return scipy.linalg.svdvals(arr)
        except (scipy.linalg.LinAlgError, ValueError) as e:
            raise EigenSolverError("singular_values", str(e)) from e

    def min_singular_value(self, matrix: np.ndarray) -> float:
        """
        Smallest singular value of any matrix.

        Example:
            >>> LinalgAdapter().min_singular_value(np.diag([5.0, 0.25]))
            0.25
        """
        return float(self.singular_values(matrix)[-1])

    def op_norm(self, matrix: np.ndarray, kind: NormKind = "two") -> float:
        """
        Matrix norm of the requested kind.

        Args:
            matrix: Any 2-D array.
            kind: "two" (spectral), "inf" (max row sum) or "frobenius".

        Returns:
            Nonnegative norm value.

        Raises:
            ValueError: If kind is not recognised.
        """
        if kind not in _NORM_ORD:
            raise ValueError(f"unknown norm kind {kind!r}; expected one of {sorted(_NORM_ORD)}")
        arr = np.asarray(matrix, dtype=complex)
        if kind == "two":
            return float(self.singular_values(arr)[0]) if arr.size else 0.0
        return float(scipy.linalg.norm(arr, ord=_NORM_ORD[kind]))

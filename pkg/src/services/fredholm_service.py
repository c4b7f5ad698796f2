"""
Angular reorientation kernel and its homogeneous Fredholm equation.

Particles of fixed speed v turn at rate alpha_turn into a new heading
drawn from the kernel

    T(theta, theta_g) = (J cos(theta - theta_g) + 1) / (4 pi^2),   |J| < 1.

After a spatial Fourier transform (kernel e^{-2 pi i k x}) and with
theta_g = 0, steady states P(theta) must satisfy

    (2 pi i k v cos(theta) + alpha) P(theta)
        - (alpha / (4 pi^2)) (J cos(theta) + 1) * integral P(theta') dtheta' = 0.

The operator is discretized by the Nystrom method on a uniform periodic
theta grid; a smallest singular value bounded away from zero for every k
shows that only the trivial solution exists.
"""

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from src.adapters.linalg_adapter import LinalgAdapter
from src.exceptions.mill_exceptions import KernelParamsError, MillError
from src.models.kernel_models import (
    FredholmOperator,
    KernelNormReport,
    KernelParams,
    NullspaceRow,
)
from src.numerics.quadrature import theta_nodes, theta_weights, trapezoid_theta

logger = logging.getLogger(__name__)

MIN_THETA_NODES = 8


class FredholmService:
    """
    Kernel evaluation, normalization checks and nullspace scans.

    Attributes:
        linalg: Dense SVD/eigen backend.
    """

    def __init__(self, linalg: LinalgAdapter | None = None) -> None:
        self.linalg = linalg or LinalgAdapter()

    def validate_kernel(self, kp: KernelParams) -> None:
        """
        Check |J| < 1, v > 0 and alpha_turn > 0.

        Raises:
            KernelParamsError: Listing every failed constraint.
        """
        violations = []
        if not abs(kp.J) < 1:
            violations.append("|J| must be below 1")
        if not kp.v > 0:
            violations.append("v must be positive")
        if not kp.alpha_turn > 0:
            violations.append("alpha_turn must be positive")
        if violations:
            raise KernelParamsError(violations)

    def _check_nodes(self, m: int) -> None:
        if m < MIN_THETA_NODES:
            raise KernelParamsError([f"m must be at least {MIN_THETA_NODES}, got {m}"])

    def kernel_T(
        self,
        theta: float | np.ndarray,
        theta_g: float | np.ndarray,
        kp: KernelParams,
    ) -> float | np.ndarray:
        """
        Reorientation kernel; vectorized over broadcastable angle arrays.

        Example:
            FredholmService().kernel_T(0.0, 0.0, KernelParams(J=0.5))  # 1.5/(4 pi^2)
        """
        self.validate_kernel(kp)
        return (kp.J * np.cos(np.subtract(theta, theta_g)) + 1.0) / (4.0 * np.pi**2)

    def kernel_norm_check(self, kp: KernelParams, m: int) -> float:
        """
        Double periodic-trapezoid integral of T over [-pi, pi)^2; analytically 1.
        """
        self._check_nodes(m)
        theta = theta_nodes(m)
        weights = theta_weights(m)
        table = self.kernel_T(theta[:, None], theta[None, :], kp)
        return float(weights @ table @ weights)

    def single_theta_integral(self, kp: KernelParams, m: int, theta_g: float = 0.0) -> float:
        """Integral of T(theta, theta_g) over theta alone; analytically 1/(2 pi)."""
        self._check_nodes(m)
        return float(trapezoid_theta(self.kernel_T(theta_nodes(m), theta_g, kp)))

    def kernel_report(self, kp: KernelParams, m: int) -> KernelNormReport:
        """Both normalization integrals in one record."""
        return KernelNormReport(
            J=kp.J,
            m=m,
            double_integral=self.kernel_norm_check(kp, m),
            single_integral=self.single_theta_integral(kp, m),
        )

    def assemble_fredholm(self, k: float, kp: KernelParams, m: int) -> FredholmOperator:
        """
        Nystrom matrix of the homogeneous Fredholm operator at wavenumber k.

        A = diag(2 pi i k v cos(theta_j) + alpha) - (alpha/(4 pi^2)) (J cos(theta_j) + 1) w^T

        Args:
            k: Real Fourier wavenumber.
            kp: Kernel parameters.
            m: Number of angle nodes (>= 8).

        Returns:
            FredholmOperator holding the complex (m, m) matrix.

        Raises:
            KernelParamsError: If kp is invalid or m < 8.
        """
        self.validate_kernel(kp)
        self._check_nodes(m)
        theta = theta_nodes(m)
        weights = theta_weights(m)
        alpha = kp.alpha_turn
        cos = np.cos(theta)

        transport = np.diag(2j * np.pi * k * kp.v * cos + alpha)
        turning = (alpha / (4.0 * np.pi**2)) * np.outer(kp.J * cos + 1.0, weights)
        return FredholmOperator(k=k, m=m, matrix=transport - turning, kernel=kp)

    def fredholm_eigenvalues(self, op: FredholmOperator) -> np.ndarray:
        """Eigenvalues of the discretized operator, ascending by modulus."""
        values = self.linalg.eigenvalues(op.matrix)
        return values[np.argsort(np.abs(values), kind="stable")]

    def min_singular_value(self, op: FredholmOperator) -> float:
        """Smallest singular value of the discretized operator."""
        return self.linalg.min_singular_value(op.matrix)

    def _scan_cell(self, k: float, kp: KernelParams, m: int) -> NullspaceRow:
        try:
            sigma = self.min_singular_value(self.assemble_fredholm(k, kp, m))
        except MillError as e:
            logger.warning("nullspace cell k=%s J=%s failed: %s", k, kp.J, e.message)
            return NullspaceRow(k=k, J=kp.J, m=m, error=e.message)
        logger.debug("nullspace cell k=%s J=%s: sigma_min=%s", k, kp.J, sigma)
        return NullspaceRow(k=k, J=kp.J, m=m, sigma_min=sigma)

    def nullspace_scan(
        self,
        k_values: list[float],
        kp: KernelParams,
        m: int,
        jobs: int = 1,
    ) -> list[NullspaceRow]:
        """
        Smallest singular value of the operator for each wavenumber.

        Per-cell failures are recorded in the row and the scan continues.

        Args:
            k_values: Wavenumbers, kept in input order.
            kp: Kernel parameters.
            m: Number of angle nodes.
            jobs: Worker threads.

        Returns:
            One NullspaceRow per k.

        Raises:
            KernelParamsError: If kp is invalid or m < 8.
        """
        self.validate_kernel(kp)
        self._check_nodes(m)
        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                rows = list(pool.map(lambda k: self._scan_cell(k, kp, m), k_values))
        else:
            rows = [self._scan_cell(k, kp, m) for k in k_values]
        logger.info(
            "nullspace scan J=%s m=%d: min sigma_min %s",
            kp.J,
            m,
            min((row.sigma_min for row in rows if row.sigma_min is not None), default=None),
        )
        return rows

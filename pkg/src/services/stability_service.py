"""
Linear stability of the mill steady state.

Perturbations of the form e^{st} e^{in theta} (F, G, H_r, H_theta)(r) turn
the linearized system into dw/dt = M w with w = [rho~, g~, v_r~, v_theta~]
stacked block by block over the grid nodes. M is assembled as the exact
Jacobian of the discrete axisymmetric right-hand side plus the azimuthal
terms of mode n:

    rho~ row      -i n v_theta0/r - D n^2/r^2  on rho~,  + rho0 chi0 n^2/r^2  on g~
    v_r~ row      -i n v_theta0/r              on v_r~
    v_theta~ row  -i n v_theta0/r              on v_theta~,  + i n b / r  on g~

Perturbations vanish at r_a and r_b: the corresponding rows of M are zero
and the spectrum is taken over the interior (active) degrees of freedom.

Example:
    service = StabilityService()
    op = service.assemble_operator(params, steady, n=1)
    spectrum = service.growth_spectrum(op)
    report = service.amplification_report(op, dt=1e-3)
"""

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from src.adapters.linalg_adapter import LinalgAdapter
from src.exceptions.mill_exceptions import MillError, PoleError, SingularDenominatorError
from src.models.field_models import AxisymState, RadialField, RadialGrid
from src.models.operator_models import (
    CellAnalysis,
    LinearizationCheck,
    LinearOperator,
    PerturbationMode,
    StabilityReport,
    SweepRow,
    Verdict,
    verdict_for,
)
from src.models.params_models import ModelParams, SteadyStateConstants
from src.numerics.finite_differences import (
    ddr_values,
    first_derivative_matrix,
    second_derivative_matrix,
)
from src.numerics.transport import axisym_rates, saturation_denominator
from src.services.steady_state_service import SteadyStateService

logger = logging.getLogger(__name__)

N_FIELDS = 4


def _descending_real(values: np.ndarray) -> np.ndarray:
    """Permutation ordering values by real part, then imaginary part, descending."""
    return np.lexsort((-values.imag, -values.real))


class StabilityService:
    """
    Builds and analyses the linearized operator of the steady state.

    Attributes:
        linalg: Dense eigen/SVD backend.
        steady_service: Used to rebuild steady states during sweeps.
    """

    def __init__(
        self,
        linalg: LinalgAdapter | None = None,
        steady_service: SteadyStateService | None = None,
    ) -> None:
        """
        Initialize the StabilityService.

        Args:
            linalg: Optional LinalgAdapter; a new one is created if None.
            steady_service: Optional SteadyStateService; a new one is created if None.
        """
        self.linalg = linalg or LinalgAdapter()
        self.steady_service = steady_service or SteadyStateService()

    # ------------------------------------------------------------------
    # Reductions
    # ------------------------------------------------------------------

    def linearize_chemo_coeff(
        self,
        g0: RadialField,
        params: ModelParams,
    ) -> tuple[RadialField, RadialField]:
        """
        Coefficient profiles beta/(alpha+beta g0) and beta**2/(alpha+beta g0)**2.

        Raises:
            SingularDenominatorError: If alpha + beta g0 is not positive somewhere.
        """
        denom = saturation_denominator(g0.values, params, "linearize_chemo_coeff")
        first = params.beta / denom
        second = params.beta**2 / denom**2
        return (
            RadialField(grid=g0.grid, values=first),
            RadialField(grid=g0.grid, values=second),
        )

    def g_from_rho(self, F: RadialField, s: complex, params: ModelParams) -> RadialField:
        """
        Chemical profile G = lambda/(s+1) F of a modal perturbation.

        Raises:
            PoleError: At s = -1.
        """
        if s + 1 == 0:
            raise PoleError()
        values = (params.lambda_ / (s + 1)) * np.asarray(F.values, dtype=complex)
        return RadialField(grid=F.grid, values=values)

    def perturbation_velocities(
        self,
        F: RadialField,
        steady: AxisymState,
        params: ModelParams,
        s: complex,
        n: int,
    ) -> tuple[RadialField, RadialField]:
        """
        Velocity profiles (H_r, H_theta) expressed through the density profile F.

        With sigma = s + i n v/r, q = lambda/(s+1) and
        den = (2v/r)(v' + v/r + sigma**2):

            H_r     = q (b s F' + (i n b v/r)(F' + 2F/r)) / den
            H_theta = q ((i n b F/r) sigma - b F' (v' + v/r)) / den

        v' is analytic, -(p/2) v/r, when the steady state carries its
        constants, and a finite difference otherwise.

        Raises:
            PoleError: At s = -1.
            SingularDenominatorError: Where den vanishes, with the node index.
        """
        if s + 1 == 0:
            raise PoleError()
        grid = steady.grid
        r = grid.nodes
        v = steady.v_theta
        if steady.constants is not None:
            dv = -0.5 * steady.constants.p * v / r
        else:
            dv = ddr_values(grid, v)

        f = np.asarray(F.values, dtype=complex)
        df = ddr_values(grid, f)
        b = params.b
        q = params.lambda_ / (s + 1)
        sigma = s + 1j * n * v / r
        shear = dv + v / r

        den = (2.0 * v / r) * (shear + sigma**2)
        scale = np.abs(2.0 * v / r) * (np.abs(shear) + np.abs(sigma) ** 2)
        vanishing = np.flatnonzero(np.abs(den) <= 1e-12 * np.maximum(scale, np.finfo(float).tiny))
        if vanishing.size:
            raise SingularDenominatorError("perturbation_velocities", int(vanishing[0]))

        h_r = q * (b * s * df + (1j * n * b * v / r) * (df + 2.0 * f / r)) / den
        h_theta = q * ((1j * n * b * f / r) * sigma - b * df * shear) / den
        return RadialField(grid=grid, values=h_r), RadialField(grid=grid, values=h_theta)

    # ------------------------------------------------------------------
    # Operator assembly
    # ------------------------------------------------------------------

    def azimuthal_terms(self, params: ModelParams, steady: AxisymState, n: int) -> np.ndarray:
        """
        The part of M contributed by theta-derivatives of mode n.

        Returns:
            Complex (4N, 4N) array, zero for n = 0 and on boundary rows.
        """
        grid = steady.grid
        size = grid.n
        r = grid.nodes
        denom = saturation_denominator(steady.g, params, "azimuthal_terms")
        c0 = steady.rho * params.beta / denom
        advect = -1j * n * steady.v_theta / r

        terms = np.zeros((N_FIELDS * size, N_FIELDS * size), dtype=complex)
        idx = np.arange(size)
        rho, g, v_r, v_theta = (k * size + idx for k in range(N_FIELDS))
        terms[rho, rho] = advect - params.diffusion * n**2 / r**2
        terms[rho, g] = c0 * n**2 / r**2
        terms[v_r, v_r] = advect
        terms[v_theta, v_theta] = advect
        terms[v_theta, g] = 1j * n * params.b / r
        _zero_boundary_rows(terms, size)
        return terms

    def assemble_operator(
        self,
        params: ModelParams,
        steady: AxisymState,
        n: int,
    ) -> LinearOperator:
        """
        Assemble the 4N x 4N generator M for azimuthal mode n.

        Block rows follow the perturbation equations for rho~, g~, v_r~ and
        v_theta~; for n = 0 M is the exact Jacobian of the discrete nonlinear
        right-hand side. Radial-velocity background terms are included so a
        state with v_r != 0 linearizes correctly too.

        Args:
            params: Model constants.
            steady: Background state (normally the closed-form steady state).
            n: Azimuthal wavenumber.

        Returns:
            LinearOperator with zero boundary rows and an interior active mask.

        Raises:
            SingularDenominatorError: If alpha + beta g0 is not positive somewhere.
        """
        grid = steady.grid
        size = grid.n
        r = grid.nodes
        inv_r = 1.0 / r
        d1 = first_derivative_matrix(grid)
        d2 = second_derivative_matrix(grid)
        eye = np.eye(size)

        rho0, g0, vr0, vt0 = steady.rho, steady.g, steady.v_r, steady.v_theta
        denom = saturation_denominator(g0, params, "assemble_operator")
        chi = params.beta / denom
        c0 = rho0 * chi
        c_g = -rho0 * params.beta**2 / denom**2
        dg = d1 @ g0
        lap_g = d2 @ g0 + dg * inv_r
        dc = d1 @ c0

        radial_lap = d2 + inv_r[:, None] * d1
        rho_rho = (
            params.diffusion * radial_lap
            - dg[:, None] * (d1 * chi[None, :])
            - np.diag(chi * lap_g)
            - vr0[:, None] * d1
        )
        rho_g = (
            -dg[:, None] * (d1 * c_g[None, :])
            - dc[:, None] * d1
            - np.diag(c_g * lap_g)
            - c0[:, None] * radial_lap
        )
        rho_vr = -np.diag(d1 @ rho0)
        vr_vr = -np.diag(d1 @ vr0) - vr0[:, None] * d1
        vr_vt = np.diag(2.0 * vt0 * inv_r)
        vr_g = params.b * d1
        vt_vr = -np.diag(d1 @ vt0 + vt0 * inv_r)
        vt_vt = -vr0[:, None] * d1 - np.diag(vr0 * inv_r)

        matrix = np.zeros((N_FIELDS * size, N_FIELDS * size), dtype=complex)
        blocks = {
            (0, 0): rho_rho,
            (0, 1): rho_g,
            (0, 2): rho_vr,
            (1, 0): params.lambda_ * eye,
            (1, 1): -eye,
            (2, 1): vr_g,
            (2, 2): vr_vr,
            (2, 3): vr_vt,
            (3, 2): vt_vr,
            (3, 3): vt_vt,
        }
        for (row, col), block in blocks.items():
            matrix[row * size : (row + 1) * size, col * size : (col + 1) * size] = block
        _zero_boundary_rows(matrix, size)
        if n != 0:
            matrix += self.azimuthal_terms(params, steady, n)

        logger.debug("assembled operator n=%d size=%d b=%s", n, matrix.shape[0], params.b)
        return LinearOperator(
            matrix=matrix,
            n=n,
            active=interior_mask(size),
            grid=grid,
            b=params.b,
        )

    # ------------------------------------------------------------------
    # Spectra and reports
    # ------------------------------------------------------------------

    def growth_spectrum(self, operator: LinearOperator) -> np.ndarray:
        """
        Eigenvalues of M over its active dofs, sorted by descending real part.

        Raises:
            EigenSolverError: If the dense solver fails.
        """
        values = self.linalg.eigenvalues(operator.active_matrix())
        return values[_descending_real(values)]

    def amplification_report(
        self,
        operator: LinearOperator,
        dt: float,
        spectrum: np.ndarray | None = None,
    ) -> StabilityReport:
        """
        Amplification quantities and verdict for one operator.

        The verdict comes from the sign of the leading growth rate. The norm
        of I - dt*M is reported alongside; a warning is logged when reading
        "norm greater than 1 means stable" disagrees with the verdict.

        Args:
            operator: Operator to analyse.
            dt: Positive time step.
            spectrum: Precomputed growth_spectrum(operator), if available.

        Returns:
            StabilityReport.

        Raises:
            ValueError: If dt is not positive.
            EigenSolverError: If the dense solver fails.
        """
        if not dt > 0:
            raise ValueError(f"dt must be positive, got {dt}")
        if spectrum is None:
            spectrum = self.growth_spectrum(operator)
        active = operator.active_matrix()
        eye = np.eye(active.shape[0])
        norm = self.linalg.op_norm(eye - dt * active, "two")
        radius = float(np.max(np.abs(1.0 + dt * spectrum))) if spectrum.size else 0.0
        max_re = float(np.max(spectrum.real)) if spectrum.size else 0.0
        verdict = verdict_for(max_re)

        report = StabilityReport(
            n=operator.n,
            b=operator.b,
            dt=dt,
            norm_I_minus_dtM=norm,
            spectral_radius_forward=radius,
            max_re_eig=max_re,
            verdict=verdict,
        )
        if verdict is not Verdict.MARGINAL and report.norm_reading_stable != (verdict is Verdict.STABLE):
            logger.warning(
                "n=%d b=%s: ||I - dt M|| = %s reads %s but max Re(s) = %s gives %s",
                operator.n,
                operator.b,
                norm,
                "stable" if report.norm_reading_stable else "unstable",
                max_re,
                verdict.value,
            )
        return report

    def mode_from_eigenvector(self, operator: LinearOperator, index: int = 0) -> PerturbationMode:
        """
        Unpack an eigenvector of M into modal profiles.

        Eigenpairs are ordered as in growth_spectrum. The vector is extended
        by zeros on pinned dofs and scaled to unit L2 norm.

        Args:
            operator: Assembled operator (must carry its grid).
            index: Position in the descending-real-part ordering.

        Returns:
            PerturbationMode with s and F, G, H_r, H_theta.

        Raises:
            ValueError: If the operator has no grid.
            EigenSolverError: If the dense solver fails.
        """
        if operator.grid is None:
            raise ValueError("operator was not assembled on a grid")
        values, vectors = self.linalg.eig(operator.active_matrix())
        order = _descending_real(values)
        pick = order[index]

        full = np.zeros(operator.size, dtype=complex)
        full[operator.active] = vectors[:, pick]
        full /= np.linalg.norm(full)
        F, G, H_r, H_theta = np.split(full, N_FIELDS)
        return PerturbationMode(
            grid=operator.grid,
            n=operator.n,
            s=complex(values[pick]),
            F=F,
            G=G,
            H_r=H_r,
            H_theta=H_theta,
        )

    # ------------------------------------------------------------------
    # Linearization consistency
    # ------------------------------------------------------------------

    def nonlinear_directional_derivative(
        self,
        params: ModelParams,
        steady: AxisymState,
        direction: np.ndarray,
        epsilon: float = 1e-6,
    ) -> np.ndarray:
        """
        Central difference of the nonlinear rhs along a direction.

        Args:
            params: Model constants.
            steady: Base state.
            direction: Real vector in operator layout (length 4N).
            epsilon: Finite-difference step.

        Returns:
            [rhs(s + eps d) - rhs(s - eps d)] / (2 eps), flattened, boundary rows zero.
        """
        grid = steady.grid
        base = steady.as_array()
        delta = np.asarray(direction, dtype=float).reshape(N_FIELDS, grid.n)
        plus = axisym_rates(grid, base + epsilon * delta, params)
        minus = axisym_rates(grid, base - epsilon * delta, params)
        derivative = (plus - minus) / (2.0 * epsilon)
        derivative[:, 0] = 0.0
        derivative[:, -1] = 0.0
        return derivative.reshape(-1)

    def linearization_check(
        self,
        params: ModelParams,
        steady: AxisymState,
        n_directions: int = 10,
        epsilon: float = 1e-6,
        seed: int = 0,
    ) -> LinearizationCheck:
        """
        Compare M(n=0) with finite differences of the nonlinear rhs.

        Directions are standard-normal on interior dofs, drawn from
        numpy.random.default_rng(seed).

        Returns:
            LinearizationCheck with one relative error per direction.
        """
        operator = self.assemble_operator(params, steady, n=0)
        rng = np.random.default_rng(seed)
        errors: list[float] = []
        for _ in range(n_directions):
            delta = rng.standard_normal(operator.size)
            delta[~operator.active] = 0.0
            applied = operator.apply(delta)
            fd = self.nonlinear_directional_derivative(params, steady, delta, epsilon)
            errors.append(float(np.linalg.norm(applied - fd) / np.linalg.norm(applied)))
        logger.info("linearization check: max relative error %s", max(errors, default=0.0))
        return LinearizationCheck(epsilon=epsilon, seed=seed, relative_errors=errors)

    # ------------------------------------------------------------------
    # Sweeps
    # ------------------------------------------------------------------

    def analyze_cell(
        self,
        params: ModelParams,
        constants: SteadyStateConstants,
        grid: RadialGrid,
        b: float,
        n: int,
        dt: float | None = None,
    ) -> CellAnalysis:
        """
        Rebuild the steady state at coupling b and analyse mode n.

        Library errors are captured in the result instead of raised.
        """
        try:
            cell_params = params.with_b(b)
            steady = self.steady_service.eval_steady(cell_params, constants, grid)
            operator = self.assemble_operator(cell_params, steady, n)
            spectrum = self.growth_spectrum(operator)
            report = None
            if dt is not None:
                report = self.amplification_report(operator, dt, spectrum=spectrum)
        except MillError as e:
            logger.warning("sweep cell b=%s n=%d failed: %s", b, n, e.message)
            return CellAnalysis(b=b, n=n, error=e.message)
        logger.info("sweep cell b=%s n=%d: max Re(s) = %s", b, n, spectrum[0].real)
        return CellAnalysis(b=b, n=n, spectrum=spectrum, report=report)

    def sweep_cells(
        self,
        params: ModelParams,
        constants: SteadyStateConstants,
        grid: RadialGrid,
        b_values: list[float],
        n_values: list[int],
        dt: float | None = None,
        jobs: int = 1,
    ) -> list[CellAnalysis]:
        """
        Analyse every (b, n) pair, optionally on a thread pool.

        Returns:
            Cells sorted by (b, n); duplicates keep their input order.
        """
        cells = [(b, n) for b in b_values for n in n_values]
        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                results = list(
                    pool.map(lambda cell: self.analyze_cell(params, constants, grid, *cell, dt=dt), cells)
                )
        else:
            results = [self.analyze_cell(params, constants, grid, b, n, dt=dt) for b, n in cells]
        return sorted(results, key=lambda cell: (cell.b, cell.n))

    def sweep_b(
        self,
        params: ModelParams,
        constants: SteadyStateConstants,
        grid: RadialGrid,
        b_values: list[float],
        n_values: list[int],
        jobs: int = 1,
    ) -> list[SweepRow]:
        """
        Leading growth rate and verdict for every (b, n) pair.

        Args:
            params: Template parameters; b is replaced per cell.
            constants: Integration constants (independent of b).
            grid: Grid shared by all cells.
            b_values: Couplings to scan.
            n_values: Azimuthal wavenumbers to scan.
            jobs: Worker threads.

        Returns:
            One SweepRow per cell, sorted by (b, n).
        """
        cells = self.sweep_cells(params, constants, grid, b_values, n_values, jobs=jobs)
        return [cell.row() for cell in cells]


def interior_mask(n_nodes: int) -> np.ndarray:
    """Active-dof mask in operator layout: every node except r_a and r_b."""
    mask = np.ones((N_FIELDS, n_nodes), dtype=bool)
    mask[:, 0] = False
    mask[:, -1] = False
    return mask.reshape(-1)


def _zero_boundary_rows(matrix: np.ndarray, n_nodes: int) -> None:
    for k in range(N_FIELDS):
        matrix[k * n_nodes, :] = 0.0
        matrix[k * n_nodes + n_nodes - 1, :] = 0.0



"""
Nonlinear axisymmetric time evolution.

The four fields (rho, g, v_r, v_theta) are advanced by method of lines:
finite-difference right-hand sides in r and an explicit Euler or classical
RK4 step in time. Boundary nodes are pinned to their initial values by
zeroing their time derivatives, so they stay bit-identical across steps.

Example:
    evolver = EvolverService()
    cfg = EvolveConfig(dt=evolver.cfl_limit(grid, params), n_steps=100)
    perturbed = evolver.add_perturbation(steady, 1e-3, PerturbationShape.BUMP)
    trajectory = evolver.evolve(perturbed, params, cfg, reference=steady)
    rate = evolver.fit_growth_rate(trajectory)
"""

import logging
from collections.abc import Callable

import numpy as np

from src.exceptions.mill_exceptions import (
    AmplitudeError,
    BlowUpError,
    CFLViolationError,
    SingularDenominatorError,
)
from src.models.evolve_models import EvolveConfig, PerturbationShape, Scheme, Trajectory
from src.models.field_models import FIELD_NAMES, AxisymState, RadialField, RadialGrid
from src.models.params_models import ModelParams
from src.numerics.transport import axisym_rates, saturation_denominator

logger = logging.getLogger(__name__)

RateFunction = Callable[[np.ndarray], np.ndarray]


class EvolverService:
    """
    Explicit integrator for the axisymmetric system.

    Stateless; one instance can drive any number of independent runs.
    """

    def rhs(
        self,
        state: AxisymState,
        params: ModelParams,
    ) -> tuple[RadialField, RadialField, RadialField, RadialField]:
        """
        Time derivatives of rho, g, v_r and v_theta.

        Args:
            state: Current state.
            params: Model constants.

        Returns:
            Four RadialFields, in the order rho, g, v_r, v_theta.

        Raises:
            SingularDenominatorError: If alpha + beta g is not positive somewhere.
        """
        rates = axisym_rates(state.grid, state.as_array(), params)
        return tuple(RadialField(grid=state.grid, values=row) for row in rates)  # type: ignore[return-value]

    def cfl_limit(self, grid: RadialGrid, params: ModelParams) -> float:
        """Largest admissible explicit step dr**2 / (4 D)."""
        return grid.dr**2 / (4.0 * params.diffusion)

    def check_cfl(self, grid: RadialGrid, params: ModelParams, cfg: EvolveConfig) -> None:
        """
        Enforce dt <= dr**2/(4D).

        Raises:
            CFLViolationError: If dt is above the limit and cfl_override is off.
        """
        limit = self.cfl_limit(grid, params)
        if cfg.dt <= limit:
            return
        if not cfg.cfl_override:
            raise CFLViolationError(dt=cfg.dt, limit=limit)
        logger.warning("dt=%s exceeds the CFL limit %s; continuing on override", cfg.dt, limit)

    def _rate_function(
        self,
        grid: RadialGrid,
        params: ModelParams,
        cfg: EvolveConfig,
    ) -> RateFunction:
        frozen = [FIELD_NAMES.index(name) for name in cfg.frozen_fields]

        def rate(stacked: np.ndarray) -> np.ndarray:
            rates = axisym_rates(grid, stacked, params)
            rates[:, 0] = 0.0
            rates[:, -1] = 0.0
            rates[frozen, :] = 0.0
            return rates

        return rate

    def _advance(self, stacked: np.ndarray, rate: RateFunction, cfg: EvolveConfig) -> np.ndarray:
        dt = cfg.dt
        if cfg.scheme is Scheme.EULER:
            return stacked + dt * rate(stacked)
        k1 = rate(stacked)
        k2 = rate(stacked + 0.5 * dt * k1)
        k3 = rate(stacked + 0.5 * dt * k2)
        k4 = rate(stacked + dt * k3)
        return stacked + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    def _checked_advance(
        self,
        stacked: np.ndarray,
        rate: RateFunction,
        cfg: EvolveConfig,
        step_index: int,
    ) -> np.ndarray:
        try:
            with np.errstate(all="ignore"):
                new = self._advance(stacked, rate, cfg)
        except SingularDenominatorError as e:
            raise BlowUpError(step_index) from e
        if not np.all(np.isfinite(new)):
            raise BlowUpError(step_index)
        return new

    def step(
        self,
        state: AxisymState,
        params: ModelParams,
        cfg: EvolveConfig,
        step_index: int = 1,
    ) -> AxisymState:
        """
        Advance one time step.

        Args:
            state: Current state; alpha + beta g must be positive.
            params: Model constants.
            cfg: Step size, scheme and hooks.
            step_index: Index reported if the step blows up.

        Returns:
            The new state; boundary values are copied unchanged.

        Raises:
            CFLViolationError: If dt breaks the CFL guard without override.
            SingularDenominatorError: If the input state violates the rhs precondition.
            BlowUpError: If the result holds non-finite values.
        """
        self.check_cfl(state.grid, params, cfg)
        saturation_denominator(state.g, params, "step")
        rate = self._rate_function(state.grid, params, cfg)
        new = self._checked_advance(state.as_array(), rate, cfg, step_index)
        return AxisymState.from_array(state.grid, new)

    def add_perturbation(
        self,
        state: AxisymState,
        amplitude: float,
        shape: PerturbationShape = PerturbationShape.BUMP,
    ) -> AxisymState:
        """
        Add amplitude * profile to the density.

        Both profiles peak at 1 at the domain midpoint and vanish at r_a and
        r_b; the bump is the smooth compactly supported exp(1 - 1/(1 - x**2)).

        Args:
            state: State to perturb.
            amplitude: Absolute perturbation size.
            shape: Profile of the perturbation.

        Returns:
            New state; g and both velocities are unchanged.

        Raises:
            AmplitudeError: If |amplitude| >= 0.1 * min(rho).
        """
        limit = 0.1 * float(np.min(state.rho))
        if not abs(amplitude) < limit:
            raise AmplitudeError(amplitude=amplitude, limit=limit)

        profile = perturbation_profile(state.grid, shape)
        return state.model_copy(update={"rho": state.rho + amplitude * profile, "constants": None})

    def deviation_norm(self, state: AxisymState, reference: AxisymState) -> float:
        """Discrete L2 distance sqrt(dr * sum over all four fields)."""
        diff = state.as_array() - reference.as_array()
        return float(np.sqrt(state.grid.dr * np.sum(diff**2)))

    def evolve(
        self,
        state: AxisymState,
        params: ModelParams,
        cfg: EvolveConfig,
        reference: AxisymState,
    ) -> Trajectory:
        """
        Integrate n_steps and record the deviation from a reference.

        Blow-up ends the run early and is recorded in the trajectory
        rather than raised.

        Args:
            state: Initial state.
            params: Model constants.
            cfg: Integration settings.
            reference: State the deviation norm is measured against.

        Returns:
            Trajectory with records at t = 0 and every record_every steps.

        Raises:
            CFLViolationError: If dt breaks the CFL guard without override.
        """
        self.check_cfl(state.grid, params, cfg)
        saturation_denominator(state.g, params, "evolve")
        grid = state.grid
        rate = self._rate_function(grid, params, cfg)

        current = state.as_array()
        times = [0.0]
        norms = [self.deviation_norm(state, reference)]
        snapshots = [state] if cfg.keep_snapshots else []
        blowup_step: int | None = None

        for i in range(1, cfg.n_steps + 1):
            try:
                current = self._checked_advance(current, rate, cfg, i)
            except BlowUpError as e:
                blowup_step = e.step_index
                logger.warning("evolution blew up at step %d (t=%s)", i, i * cfg.dt)
                break
            if i % cfg.record_every == 0:
                snapshot = AxisymState.from_array(grid, current)
                times.append(i * cfg.dt)
                norms.append(self.deviation_norm(snapshot, reference))
                if cfg.keep_snapshots:
                    snapshots.append(snapshot)

        logger.info(
            "evolved %d steps (%s), final deviation %s",
            cfg.n_steps if blowup_step is None else blowup_step - 1,
            cfg.scheme.value,
            norms[-1],
        )
        return Trajectory(
            times=np.asarray(times),
            deviation_norms=np.asarray(norms),
            blowup=blowup_step is not None,
            blowup_step=blowup_step,
            snapshots=snapshots,
        )

    def fit_growth_rate(
        self,
        trajectory: Trajectory,
        t_min: float | None = None,
        t_max: float | None = None,
    ) -> float:
        """
        Least-squares slope of log(deviation_norm) against time.

        Args:
            trajectory: Recorded run.
            t_min: Start of the fitting window (inclusive); default first record.
            t_max: End of the fitting window (inclusive); default last record.

        Returns:
            Fitted exponential rate s in norm ~ exp(s t).

        Raises:
            ValueError: If fewer than two positive records fall in the window.
        """
        t = trajectory.times
        y = trajectory.deviation_norms
        mask = (y > 0) & np.isfinite(y)
        if t_min is not None:
            mask &= t >= t_min
        if t_max is not None:
            mask &= t <= t_max
        if np.count_nonzero(mask) < 2:
            raise ValueError("need at least two positive deviation norms to fit a growth rate")
        slope, _ = np.polyfit(t[mask], np.log(y[mask]), 1)
        return float(slope)


def perturbation_profile(grid: RadialGrid, shape: PerturbationShape) -> np.ndarray:
    """Unit-peak profile vanishing at both grid ends."""
    r = grid.nodes
    centre = 0.5 * (grid.r_a + grid.r_b)
    half_width = 0.5 * (grid.r_b - grid.r_a)
    x = (r - centre) / half_width
    profile = np.zeros(grid.n)
    if shape is PerturbationShape.BUMP:
        inside = np.abs(x) < 1.0
        profile[inside] = np.exp(1.0 - 1.0 / (1.0 - x[inside] ** 2))
    else:
        profile = np.sin(0.5 * np.pi * (x + 1.0))
    profile[0] = 0.0
    profile[-1] = 0.0
    return profile

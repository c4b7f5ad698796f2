"""
Tests for the EvolverService.
"""

import logging

import numpy as np
import pytest

from src.exceptions.mill_exceptions import AmplitudeError, CFLViolationError
from src.models.evolve_models import EvolveConfig, PerturbationShape, Scheme, Trajectory
from src.models.field_models import AxisymState, RadialGrid
from src.models.params_models import ModelParams, SteadyStateConstants
from src.services.evolver_service import EvolverService, perturbation_profile
from src.services.steady_state_service import SteadyStateService
from tests.conftest import canonical_grid


def interior_rate_max(evolver: EvolverService, state: AxisymState, params: ModelParams) -> float:
    inner = state.grid.interior
    return max(float(np.max(np.abs(f.values[inner]))) for f in evolver.rhs(state, params))


class TestRhs:
    """Tests for the axisymmetric right-hand side."""

    def test_steady_state_is_equilibrium(
        self,
        evolver: EvolverService,
        steady_service: SteadyStateService,
        params: ModelParams,
        constants: SteadyStateConstants,
    ) -> None:
        """Test the interior rhs at the steady state halves twice under refinement."""
        coarse = steady_service.eval_steady(params, constants, canonical_grid(129))
        fine = steady_service.eval_steady(params, constants, canonical_grid(257))

        ratio = interior_rate_max(evolver, coarse, params) / interior_rate_max(evolver, fine, params)

        assert ratio >= 3.5

    def test_chemical_and_azimuthal_rates_vanish(
        self, evolver: EvolverService, small_steady: AxisymState, params: ModelParams
    ) -> None:
        """Test g_t = 0 and v_theta_t = 0 exactly at the steady state."""
        _, g_rate, _, vt_rate = evolver.rhs(small_steady, params)

        assert np.all(g_rate.values == 0.0)
        assert np.all(vt_rate.values == 0.0)

    def test_uniform_state(self, evolver: EvolverService, params: ModelParams) -> None:
        """Test rho = 1, g = lambda, v = 0 has zero derivatives."""
        grid = RadialGrid(r_a=0.5, r_b=1.5, n=11)
        state = AxisymState(
            grid=grid,
            rho=np.ones(11),
            g=np.full(11, params.lambda_),
            v_r=np.zeros(11),
            v_theta=np.zeros(11),
        )

        for rate in evolver.rhs(state, params):
            np.testing.assert_allclose(rate.values, 0.0, atol=1e-9)

    def test_zero_state(self, evolver: EvolverService, params: ModelParams) -> None:
        """Test the origin is a fixed point."""
        state = AxisymState.zeros(RadialGrid(r_a=0.5, r_b=1.5, n=11))

        for rate in evolver.rhs(state, params):
            assert np.all(rate.values == 0.0)


class TestStep:
    """Tests for single time steps."""

    def test_zero_state_stays_zero(self, evolver: EvolverService, params: ModelParams) -> None:
        """Test one RK4 step of the zero state."""
        grid = RadialGrid(r_a=0.5, r_b=1.5, n=11)
        cfg = EvolveConfig(dt=evolver.cfl_limit(grid, params), n_steps=1)

        result = evolver.step(AxisymState.zeros(grid), params, cfg)

        assert np.all(result.as_array() == 0.0)

    def test_cfl_guard(
        self, evolver: EvolverService, small_steady: AxisymState, params: ModelParams
    ) -> None:
        """Test dt = 10 dr**2 is rejected without override."""
        cfg = EvolveConfig(dt=10.0 * small_steady.grid.dr**2, n_steps=1)

        with pytest.raises(CFLViolationError):
            evolver.step(small_steady, params, cfg)

    def test_cfl_override_warns(
        self,
        evolver: EvolverService,
        small_steady: AxisymState,
        params: ModelParams,
        caplog: pytest.LogCaptureFixture,
    ) -> None:
        """Test the override runs the step and logs a warning."""
        cfg = EvolveConfig(
            dt=10.0 * small_steady.grid.dr**2, n_steps=1, scheme=Scheme.EULER, cfl_override=True
        )

        with caplog.at_level(logging.WARNING, logger="src.services.evolver_service"):
            evolver.step(small_steady, params, cfg)

        assert "CFL" in caplog.text

    def test_boundary_values_pinned(
        self, evolver: EvolverService, small_steady: AxisymState, params: ModelParams
    ) -> None:
        """Test endpoint values are bit-identical after several steps."""
        cfg = EvolveConfig(dt=evolver.cfl_limit(small_steady.grid, params), n_steps=1)
        perturbed = evolver.add_perturbation(small_steady, 1e-3, PerturbationShape.BUMP)

        state = perturbed
        for i in range(1, 6):
            state = evolver.step(state, params, cfg, step_index=i)

        before = perturbed.as_array()
        after = state.as_array()
        assert np.array_equal(before[:, 0], after[:, 0])
        assert np.array_equal(before[:, -1], after[:, -1])

    def test_rk4_matches_four_euler_steps(
        self,
        evolver: EvolverService,
        steady_service: SteadyStateService,
        params: ModelParams,
        constants: SteadyStateConstants,
    ) -> None:
        """Test one RK4 step and four Euler steps of dt/4 differ by O(dt**2)."""
        grid = RadialGrid(r_a=0.5, r_b=1.4, n=11)
        start = evolver.add_perturbation(
            steady_service.eval_steady(params, constants, grid), 1e-2, PerturbationShape.MODE0_SINE
        )

        def gap(dt: float) -> float:
            rk4 = evolver.step(start, params, EvolveConfig(dt=dt, n_steps=1, scheme=Scheme.RK4))
            euler = start
            quarter = EvolveConfig(dt=dt / 4, n_steps=1, scheme=Scheme.EULER)
            for _ in range(4):
                euler = evolver.step(euler, params, quarter)
            return float(np.max(np.abs(rk4.as_array() - euler.as_array())))

        ratio = gap(1e-4) / gap(5e-5)

        assert 3.0 <= ratio <= 5.0


class TestAddPerturbation:
    """Tests for density perturbations."""

    def test_zero_amplitude(self, evolver: EvolverService, small_steady: AxisymState) -> None:
        """Test epsilon = 0 leaves the state unchanged."""
        result = evolver.add_perturbation(small_steady, 0.0)

        assert np.array_equal(result.as_array(), small_steady.as_array())

    def test_bump_peak(self, evolver: EvolverService, small_steady: AxisymState) -> None:
        """Test the bump adds exactly the amplitude at its centre node."""
        result = evolver.add_perturbation(small_steady, 1e-3, PerturbationShape.BUMP)
        diff = result.rho - small_steady.rho

        assert np.max(np.abs(diff)) == pytest.approx(1e-3, rel=1e-9)
        assert int(np.argmax(diff)) == small_steady.grid.n // 2
        assert np.array_equal(result.g, small_steady.g)
        assert np.array_equal(result.v_theta, small_steady.v_theta)

    def test_negation(self, evolver: EvolverService, small_steady: AxisymState) -> None:
        """Test -epsilon gives the negated perturbation."""
        plus = evolver.add_perturbation(small_steady, 1e-3).rho - small_steady.rho
        minus = evolver.add_perturbation(small_steady, -1e-3).rho - small_steady.rho

        np.testing.assert_allclose(minus, -plus, atol=1e-15)

    def test_amplitude_limit(self, evolver: EvolverService, small_steady: AxisymState) -> None:
        """Test |epsilon| >= 0.1 min(rho) is rejected."""
        with pytest.raises(AmplitudeError):
            evolver.add_perturbation(small_steady, 0.1 * float(np.min(small_steady.rho)))

    def test_constants_dropped(self, evolver: EvolverService, small_steady: AxisymState) -> None:
        """Test a perturbed state no longer claims to be the closed form."""
        assert evolver.add_perturbation(small_steady, 1e-3).constants is None

    @pytest.mark.parametrize("shape", list(PerturbationShape))
    def test_profiles_vanish_at_ends(self, shape: PerturbationShape) -> None:
        """Test both profiles are zero at r_a and r_b and peak at 1."""
        profile = perturbation_profile(RadialGrid(r_a=0.5, r_b=1.5, n=21), shape)

        assert profile[0] == 0.0
        assert profile[-1] == 0.0
        assert profile[10] == pytest.approx(1.0)


class TestEvolve:
    """Tests for full trajectories."""

    def test_equilibrium_drift(
        self,
        evolver: EvolverService,
        steady_service: SteadyStateService,
        params: ModelParams,
        constants: SteadyStateConstants,
    ) -> None:
        """Test 100 RK4 steps from the steady state drift no faster than truncation."""
        steady = steady_service.eval_steady(params, constants, canonical_grid(33))
        cfg = EvolveConfig(dt=evolver.cfl_limit(steady.grid, params), n_steps=100)

        trajectory = evolver.evolve(steady, params, cfg, reference=steady)
        first_step = trajectory.deviation_norms[1]

        assert not trajectory.blowup
        assert len(trajectory.times) == 101
        assert trajectory.deviation_norms[0] == 0.0
        assert first_step > 0.0
        assert trajectory.deviation_norms[-1] <= 10.0 * cfg.n_steps * first_step

    def test_record_every(
        self, evolver: EvolverService, small_steady: AxisymState, params: ModelParams
    ) -> None:
        """Test records at t = 0 and every record_every steps."""
        dt = evolver.cfl_limit(small_steady.grid, params)
        cfg = EvolveConfig(dt=dt, n_steps=10, record_every=5, keep_snapshots=True)

        trajectory = evolver.evolve(small_steady, params, cfg, reference=small_steady)

        np.testing.assert_allclose(trajectory.times, [0.0, 5 * dt, 10 * dt])
        assert len(trajectory.snapshots) == 3

    def test_chemical_relaxation(
        self, evolver: EvolverService, small_steady: AxisymState, params: ModelParams
    ) -> None:
        """Test that with rho frozen, |g - lambda rho| decays like exp(-t)."""
        grid = small_steady.grid
        profile = perturbation_profile(grid, PerturbationShape.MODE0_SINE)
        start = small_steady.model_copy(update={"g": small_steady.g + 0.1 * profile})
        dt = evolver.cfl_limit(grid, params)
        n_steps = int(round(1.0 / dt))
        cfg = EvolveConfig(
            dt=dt,
            n_steps=n_steps,
            record_every=n_steps,
            frozen_fields=("rho", "v_r", "v_theta"),
            keep_snapshots=True,
        )

        trajectory = evolver.evolve(start, params, cfg, reference=small_steady)
        final = trajectory.snapshots[-1]
        before = np.max(np.abs(start.g - params.lambda_ * start.rho))
        after = np.max(np.abs(final.g - params.lambda_ * final.rho))

        assert np.array_equal(final.rho, start.rho)
        assert after / before == pytest.approx(np.exp(-n_steps * dt), rel=0.05)

    def test_blowup_is_recorded(
        self, evolver: EvolverService, small_steady: AxisymState, params: ModelParams
    ) -> None:
        """Test an unstable explicit run stops early with the failing step."""
        cfg = EvolveConfig(dt=1.0, n_steps=500, scheme=Scheme.EULER, cfl_override=True)

        trajectory = evolver.evolve(small_steady, params, cfg, reference=small_steady)

        assert trajectory.blowup
        assert trajectory.blowup_step is not None
        assert len(trajectory.times) == trajectory.blowup_step

    def test_frozen_field_names_checked(self) -> None:
        """Test unknown frozen field names are rejected by the config."""
        with pytest.raises(ValueError):
            EvolveConfig(dt=1e-3, n_steps=1, frozen_fields=("pressure",))


class TestDiagnostics:
    """Tests for deviation norms and growth-rate fits."""

    def test_deviation_norm(self, evolver: EvolverService) -> None:
        """Test sqrt(dr * sum diff**2) on a unit density offset."""
        grid = RadialGrid(r_a=1.0, r_b=2.0, n=5)
        zero = AxisymState.zeros(grid)
        ones = zero.model_copy(update={"rho": np.ones(5)})

        assert evolver.deviation_norm(ones, zero) == pytest.approx(np.sqrt(0.25 * 5))

    def test_fit_growth_rate(self, evolver: EvolverService) -> None:
        """Test the fitted slope of a pure exponential."""
        t = np.linspace(0.0, 2.0, 21)
        trajectory = Trajectory(times=t, deviation_norms=1e-3 * np.exp(-2.0 * t))

        assert evolver.fit_growth_rate(trajectory) == pytest.approx(-2.0, rel=1e-10)

    def test_fit_window(self, evolver: EvolverService) -> None:
        """Test that t_min and t_max restrict the fit."""
        t = np.linspace(0.0, 2.0, 21)
        norms = np.where(t < 1.0, np.exp(3.0 * t), np.exp(3.0) * np.exp(-(t - 1.0)))
        trajectory = Trajectory(times=t, deviation_norms=norms)

        assert evolver.fit_growth_rate(trajectory, t_min=1.0) == pytest.approx(-1.0, rel=1e-8)

    def test_fit_needs_two_points(self, evolver: EvolverService) -> None:
        """Test a single record cannot be fitted."""
        trajectory = Trajectory(times=np.array([0.0]), deviation_norms=np.array([1.0]))

        with pytest.raises(ValueError):
            evolver.fit_growth_rate(trajectory)

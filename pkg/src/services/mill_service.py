"""
Run orchestration for the mill analyses.

This module provides the MillService class, the single entry point the CLI
talks to. It validates a RunConfig once, builds the grid and steady state,
dispatches to the analysis services and writes every artifact through the
CSV writer adapter. Numerical failures found mid-run are raised only after
the partial artifacts are on disk.

Example:
    service = MillService()
    config = service.load_config("experiments/canonical.json")
    service.run_steady(config, out_dir="out")
    service.run_stability(config, out_dir="out", seed=0, jobs=4)
"""

import logging
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import ValidationError

from src.adapters.csv_writer_adapter import CsvWriterAdapter
from src.adapters.json_config_adapter import JsonConfigAdapter
from src.exceptions.mill_exceptions import (
    BlowUpError,
    ConstraintViolationError,
    NumericalError,
)
from src.models.config_models import RunConfig
from src.models.evolve_models import EvolveConfig
from src.models.field_models import AxisymState, RadialGrid
from src.models.kernel_models import KernelParams
from src.models.operator_models import Verdict
from src.models.params_models import ModelParams, SteadyStateConstants, ValidationResult
from src.services.evolver_service import EvolverService
from src.services.fredholm_service import FredholmService
from src.services.params_service import ParamsService
from src.services.stability_service import StabilityService
from src.services.steady_state_service import SteadyStateService

logger = logging.getLogger(__name__)


class RunSetup:
    """Validated parameters, constants and grid shared by every subcommand."""

    def __init__(
        self,
        params: ModelParams,
        constants: SteadyStateConstants,
        grid: RadialGrid,
        r_star: float,
    ) -> None:
        self.params = params
        self.constants = constants
        self.grid = grid
        self.r_star = r_star


class MillService:
    """
    Orchestrates configuration, analysis services and artifact output.

    Attributes:
        config_adapter: JSON config reader.
        writer: CSV/JSON artifact writer.
        params_service: Constraint checks.
        steady_service: Closed-form steady state.
        evolver: Nonlinear time evolution.
        stability: Linear stability.
        fredholm: Fredholm nullspace checks.
    """

    def __init__(
        self,
        config_adapter: JsonConfigAdapter | None = None,
        writer: CsvWriterAdapter | None = None,
        params_service: ParamsService | None = None,
        steady_service: SteadyStateService | None = None,
        evolver: EvolverService | None = None,
        stability: StabilityService | None = None,
        fredholm: FredholmService | None = None,
    ) -> None:
        self.config_adapter = config_adapter or JsonConfigAdapter()
        self.writer = writer or CsvWriterAdapter()
        self.params_service = params_service or ParamsService()
        self.steady_service = steady_service or SteadyStateService(self.params_service)
        self.evolver = evolver or EvolverService()
        self.stability = stability or StabilityService(steady_service=self.steady_service)
        self.fredholm = fredholm or FredholmService()

    def load_config(self, config_path: str) -> RunConfig:
        """
        Load a run configuration.

        Raises:
            ConfigError: If the file is missing or malformed.
        """
        return self.config_adapter.load(config_path)

    def prepare(self, config: RunConfig) -> RunSetup:
        """
        Validate constants and build the grid.

        Raises:
            ConstraintViolationError: On any parameter, constant or grid violation.
        """
        params = config.model
        constants = self.params_service.derive_constants(
            params, config.constants.c1, config.constants.c2
        )
        r_star = self.params_service.admissible_outer_radius(params, constants)
        section = config.grid
        r_b = section.r_b if section.r_b is not None else section.r_b_fraction * r_star  # type: ignore[operator]
        grid = RadialGrid(r_a=section.r_a, r_b=r_b, n=section.n)
        logger.info("grid [%s, %s] with n=%d (r* = %s)", grid.r_a, grid.r_b, grid.n, r_star)
        return RunSetup(params=params, constants=constants, grid=grid, r_star=r_star)

    def _steady(self, setup: RunSetup) -> AxisymState:
        return self.steady_service.eval_steady(setup.params, setup.constants, setup.grid)

    # ------------------------------------------------------------------
    # Subcommands
    # ------------------------------------------------------------------

    def run_steady(self, config: RunConfig, out_dir: str) -> dict[str, Any]:
        """
        Write steady.csv and identities.json.

        Returns:
            Summary with the identity report.
        """
        setup = self.prepare(config)
        state = self._steady(setup)
        report = self.steady_service.check_identities(setup.params, state)
        mass, chemical, momentum = self.steady_service.steady_residual(
            setup.params, state
        ).interior_max()

        rows = [
            [r, rho, g, v]
            for r, rho, g, v in zip(setup.grid.nodes, state.rho, state.g, state.v_theta)
        ]
        self.writer.write_rows(
            str(Path(out_dir) / "steady.csv"),
            headers=["r", "rho0", "g0", "vtheta0"],
            rows=rows,
            overwrite=True,
        )
        identities = report.model_dump()
        identities.update(
            {
                "r_star": setup.r_star,
                "p": setup.constants.p,
                "max_mass_residual": mass,
                "max_chemical_residual": chemical,
                "max_momentum_residual": momentum,
            }
        )
        self.writer.write_json(str(Path(out_dir) / "identities.json"), identities, overwrite=True)
        return identities

    def _evolve_config(self, config: RunConfig, setup: RunSetup) -> EvolveConfig:
        section = config.evolve
        dt = section.dt if section.dt is not None else self.evolver.cfl_limit(setup.grid, setup.params)
        violations = []
        if not dt > 0:
            violations.append("dt must be positive")
        if section.n_steps < 1:
            violations.append("n_steps must be at least 1")
        if section.record_every < 1:
            violations.append("record_every must be at least 1")
        if violations:
            raise ConstraintViolationError(violations)
        try:
            return EvolveConfig(
                dt=dt,
                n_steps=section.n_steps,
                scheme=section.scheme,
                record_every=section.record_every,
                cfl_override=section.cfl_override,
            )
        except ValidationError as e:
            raise ConstraintViolationError([str(e)]) from e

    def run_evolve(self, config: RunConfig, out_dir: str) -> dict[str, Any]:
        """
        Evolve the perturbed steady state and write trajectory.csv.

        Raises:
            BlowUpError: After writing the partial trajectory, if the run blew up.
        """
        setup = self.prepare(config)
        steady = self._steady(setup)
        cfg = self._evolve_config(config, setup)
        amplitude = config.evolve.epsilon1 * float(np.min(steady.rho))
        start = self.evolver.add_perturbation(steady, amplitude, config.evolve.shape)
        trajectory = self.evolver.evolve(start, setup.params, cfg, reference=steady)

        rows: list[list[Any]] = [
            [t, norm, False] for t, norm in zip(trajectory.times, trajectory.deviation_norms)
        ]
        if trajectory.blowup_step is not None:
            rows.append([trajectory.blowup_step * cfg.dt, float("nan"), True])
        n_records = len(rows)
        self.writer.write_rows(
            str(Path(out_dir) / "trajectory.csv"),
            headers=["t", "deviation_norm", "blowup_flag"],
            rows=rows,
            overwrite=True,
        )
        if trajectory.blowup_step is not None:
            raise BlowUpError(trajectory.blowup_step)
        return {"dt": cfg.dt, "amplitude": amplitude, "records": n_records}

    def run_stability(
        self,
        config: RunConfig,
        out_dir: str,
        seed: int = 0,
        jobs: int = 1,
    ) -> dict[str, Any]:
        """
        Sweep (b, n), check the linearization, and write spectrum.csv,
        report.csv and linearization.csv.

        Raises:
            NumericalError: After writing, if any sweep cell failed.
        """
        setup = self.prepare(config)
        section = config.stability
        if not section.dt_report > 0:
            raise ConstraintViolationError(["dt_report must be positive"])
        violations = [
            f"b_sweep value {b!r}: {message}"
            for b in section.b_sweep
            for message in self.params_service.validate_params(setup.params.with_b(b)).violations
        ]
        self.params_service.require_valid(ValidationResult(violations=violations))

        cells = self.stability.sweep_cells(
            setup.params,
            setup.constants,
            setup.grid,
            section.b_sweep,
            section.n_modes,
            dt=section.dt_report,
            jobs=jobs,
        )

        spectrum_rows: list[list[Any]] = []
        report_rows: list[list[Any]] = []
        failures = []
        for cell in cells:
            if cell.spectrum is None or cell.report is None:
                failures.append(f"b={cell.b} n={cell.n}: {cell.error}")
                continue
            for index, value in enumerate(cell.spectrum):
                spectrum_rows.append([cell.n, cell.b, index, float(value.real), float(value.imag)])
            rep = cell.report
            report_rows.append(
                [
                    rep.n,
                    cell.b,
                    rep.dt,
                    rep.norm_I_minus_dtM,
                    rep.spectral_radius_forward,
                    rep.max_re_eig,
                    rep.verdict,
                ]
            )

        steady = self._steady(setup)
        check = self.stability.linearization_check(
            setup.params,
            steady,
            n_directions=section.n_directions,
            epsilon=section.epsilon,
            seed=seed,
        )

        out = Path(out_dir)
        self.writer.write_rows(
            str(out / "spectrum.csv"),
            headers=["n", "b", "eig_index", "re", "im"],
            rows=spectrum_rows,
            overwrite=True,
        )
        self.writer.write_rows(
            str(out / "report.csv"),
            headers=[
                "n",
                "b",
                "dt",
                "norm_I_minus_dtM",
                "spectral_radius",
                "max_re_eig",
                "verdict",
            ],
            rows=report_rows,
            overwrite=True,
        )
        self.writer.write_rows(
            str(out / "linearization.csv"),
            headers=["direction", "seed", "epsilon", "relative_error"],
            rows=[[i, check.seed, check.epsilon, err] for i, err in enumerate(check.relative_errors)],
            overwrite=True,
        )

        stable_b = sorted(
            {
                b
                for b in section.b_sweep
                if all(
                    c.report is not None and c.report.verdict is Verdict.STABLE
                    for c in cells
                    if c.b == b
                )
            }
        )
        if stable_b:
            logger.info("couplings stable for every tested mode: %s", stable_b)
        else:
            logger.warning("no coupling in %s is stable for all modes %s", section.b_sweep, section.n_modes)

        if failures:
            raise NumericalError("stability sweep", "; ".join(failures))
        return {
            "cells": len(cells),
            "stable_b": stable_b,
            "max_linearization_error": check.max_relative_error,
        }

    def run_fredholm(self, config: RunConfig, out_dir: str, jobs: int = 1) -> dict[str, Any]:
        """
        Scan k x J and write fredholm.csv and kernel.csv.

        Raises:
            KernelParamsError: If any J, v or alpha_turn is invalid.
            NumericalError: After writing, if any scan cell failed.
        """
        self.prepare(config)
        section = config.fredholm
        kernels = [
            KernelParams(v=section.v, alpha_turn=section.alpha_turn, J=j) for j in section.j_values
        ]
        for kp in kernels:
            self.fredholm.validate_kernel(kp)

        scan_rows: list[list[Any]] = []
        kernel_rows: list[list[Any]] = []
        failures = []
        for kp in kernels:
            for row in self.fredholm.nullspace_scan(section.k_values, kp, section.m, jobs=jobs):
                scan_rows.append([row.k, row.J, row.m, row.sigma_min])
                if row.error is not None:
                    failures.append(f"k={row.k} J={row.J}: {row.error}")
            rep = self.fredholm.kernel_report(kp, section.m)
            kernel_rows.append([rep.J, rep.m, rep.double_integral, rep.single_integral])

        out = Path(out_dir)
        self.writer.write_rows(
            str(out / "fredholm.csv"),
            headers=["k", "J", "m", "sigma_min"],
            rows=scan_rows,
            overwrite=True,
        )
        self.writer.write_rows(
            str(out / "kernel.csv"),
            headers=["J", "m", "double_integral", "single_integral"],
            rows=kernel_rows,
            overwrite=True,
        )
        if failures:
            raise NumericalError("nullspace scan", "; ".join(failures))
        sigmas = [row[3] for row in scan_rows if row[3] is not None]
        return {"cells": len(scan_rows), "min_sigma": min(sigmas, default=None)}

    def run_all(
        self,
        config: RunConfig,
        out_dir: str,
        seed: int = 0,
        jobs: int = 1,
    ) -> dict[str, Any]:
        """
        Run every analysis; the first library error stops the run.
        """
        summary: dict[str, Any] = {}
        summary["steady"] = self.run_steady(config, out_dir)
        summary["evolve"] = self.run_evolve(config, out_dir)
        summary["stability"] = self.run_stability(config, out_dir, seed=seed, jobs=jobs)
        summary["fredholm"] = self.run_fredholm(config, out_dir, jobs=jobs)
        return summary


__all__ = ["MillService", "RunSetup"]

"""
Test fixtures for the mill analyses.

This module provides the canonical parameter set (alpha = beta = lambda =
b = 1, C1 = 0.5, C2 = 2, so p = 1.5 and r* = 2**(2/3)), grids inside the
admissible domain, service instances and a small run configuration.
"""

import json
import tempfile
from collections.abc import Generator
from pathlib import Path
from typing import Any

import pytest

from src.adapters.csv_writer_adapter import CsvWriterAdapter
from src.adapters.json_config_adapter import JsonConfigAdapter
from src.adapters.linalg_adapter import LinalgAdapter
from src.models.field_models import AxisymState, RadialGrid
from src.models.params_models import ModelParams, SteadyStateConstants
from src.services.evolver_service import EvolverService
from src.services.fredholm_service import FredholmService
from src.services.mill_service import MillService
from src.services.params_service import ParamsService
from src.services.stability_service import StabilityService
from src.services.steady_state_service import SteadyStateService

R_STAR = 2.0 ** (2.0 / 3.0)


@pytest.fixture
def params() -> ModelParams:
    """Canonical model constants."""
    return ModelParams(alpha=1.0, beta=1.0, lambda_=1.0, b=1.0)


@pytest.fixture
def constants(params: ModelParams) -> SteadyStateConstants:
    """Canonical integration constants (p = 1.5)."""
    return SteadyStateConstants.derive(params, 0.5, 2.0)


@pytest.fixture
def params_service() -> ParamsService:
    return ParamsService()


@pytest.fixture
def steady_service() -> SteadyStateService:
    return SteadyStateService()


@pytest.fixture
def evolver() -> EvolverService:
    return EvolverService()


@pytest.fixture
def stability_service() -> StabilityService:
    return StabilityService()


@pytest.fixture
def fredholm_service() -> FredholmService:
    return FredholmService()


@pytest.fixture
def linalg() -> LinalgAdapter:
    return LinalgAdapter()


@pytest.fixture
def csv_writer() -> CsvWriterAdapter:
    return CsvWriterAdapter()


@pytest.fixture
def config_adapter() -> JsonConfigAdapter:
    return JsonConfigAdapter()


@pytest.fixture
def mill_service() -> MillService:
    return MillService()


def canonical_grid(n: int) -> RadialGrid:
    """Grid [0.5, 0.9 r*] with n nodes."""
    return RadialGrid(r_a=0.5, r_b=0.9 * R_STAR, n=n)


@pytest.fixture
def small_grid() -> RadialGrid:
    """Coarse grid for operator and evolution tests."""
    return RadialGrid(r_a=0.5, r_b=1.4, n=17)


@pytest.fixture
def small_steady(
    steady_service: SteadyStateService,
    params: ModelParams,
    constants: SteadyStateConstants,
    small_grid: RadialGrid,
) -> AxisymState:
    """Closed-form steady state on the coarse grid."""
    return steady_service.eval_steady(params, constants, small_grid)


@pytest.fixture
def temp_dir() -> Generator[Path, None, None]:
    """
    Create a temporary directory for test files.

    Yields:
        Path to the temporary directory.
    """
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def config_payload() -> dict[str, Any]:
    """A small but complete run configuration."""
    return {
        "model": {"alpha": 1.0, "beta": 1.0, "lambda": 1.0, "b": 1.0},
        "constants": {"c1": 0.5, "c2": 2.0},
        "grid": {"r_a": 0.5, "r_b_fraction": 0.9, "n": 17},
        "evolve": {"n_steps": 20, "scheme": "rk4", "epsilon1": 1e-3},
        "stability": {
            "n_modes": [0, 1],
            "b_sweep": [1.0, 10.0],
            "dt_report": 1e-3,
            "n_directions": 3,
        },
        "fredholm": {"k_values": [0.0, 0.5, -0.5], "J": [0.0, 0.5], "m": 16},
        "output_dir": "out",
    }


def write_config(directory: Path, payload: dict[str, Any], name: str = "config.json") -> Path:
    """Dump a payload as a JSON config file."""
    path = directory / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


@pytest.fixture
def config_file(temp_dir: Path, config_payload: dict[str, Any]) -> Path:
    """The small configuration written to disk."""
    return write_config(temp_dir, config_payload)

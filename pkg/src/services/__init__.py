"""
Service layer for the mill analyses.

Contains the numerical core (steady state, evolution, linear stability,
Fredholm checks) decoupled from the CLI and file formats.
"""

from src.services.evolver_service import EvolverService
from src.services.fredholm_service import FredholmService
from src.services.mill_service import MillService
from src.services.params_service import ParamsService
from src.services.stability_service import StabilityService
from src.services.steady_state_service import SteadyStateService

__all__ = [
    "ParamsService",
    "SteadyStateService",
    "EvolverService",
    "StabilityService",
    "FredholmService",
    "MillService",
]

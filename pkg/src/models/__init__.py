"""
Data models for the ant-mill library.

Contains Pydantic models for parameters, grids and fields, operators,
run configuration and results.
"""

from src.models.config_models import (
    ConstantsSection,
    EvolveSection,
    FredholmSection,
    GridSection,
    RunConfig,
    StabilitySection,
)
from src.models.evolve_models import EvolveConfig, PerturbationShape, Scheme, Trajectory
from src.models.field_models import FIELD_NAMES, AxisymState, RadialField, RadialGrid
from src.models.kernel_models import (
    FredholmOperator,
    KernelNormReport,
    KernelParams,
    NullspaceRow,
)
from src.models.operator_models import (
    VERDICT_TOLERANCE,
    CellAnalysis,
    LinearizationCheck,
    LinearOperator,
    PerturbationMode,
    StabilityReport,
    SweepRow,
    Verdict,
    verdict_for,
)
from src.models.params_models import ModelParams, SteadyStateConstants, ValidationResult
from src.models.result_models import IdentityReport, SteadyResiduals

__all__ = [
    "ModelParams",
    "SteadyStateConstants",
    "ValidationResult",
    "FIELD_NAMES",
    "RadialGrid",
    "RadialField",
    "AxisymState",
    "EvolveConfig",
    "Scheme",
    "PerturbationShape",
    "Trajectory",
    "LinearOperator",
    "PerturbationMode",
    "StabilityReport",
    "SweepRow",
    "LinearizationCheck",
    "Verdict",
    "VERDICT_TOLERANCE",
    "verdict_for",
    "CellAnalysis",
    "KernelParams",
    "FredholmOperator",
    "KernelNormReport",
    "NullspaceRow",
    "SteadyResiduals",
    "IdentityReport",
    "RunConfig",
    "ConstantsSection",
    "GridSection",
    "EvolveSection",
    "StabilitySection",
    "FredholmSection",
]

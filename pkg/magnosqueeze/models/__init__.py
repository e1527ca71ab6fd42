"""Models package."""

from .configs import ScenarioConfig, SimulationConfig
from .params import LinearizedModel, SystemParams
from .results import EntanglementReport, ExtractionResult, SpectralSweep, SteadyState, Trajectory
from .states import CovarianceState, QuadratureBasis


__all__ = [
    "CovarianceState",
    "EntanglementReport",
    "ExtractionResult",
    "LinearizedModel",
    "QuadratureBasis",
    "ScenarioConfig",
    "SimulationConfig",
    "SpectralSweep",
    "SteadyState",
    "SystemParams",
    "Trajectory",
]

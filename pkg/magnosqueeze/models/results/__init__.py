"""Result models."""

from .dynamics import (
    ClosedFormConstants,
    DiffusionMatrix,
    DriftMatrix,
    ModelKind,
    StableLimit,
    TauResult,
    Trajectory,
)
from .effective import (
    VALIDITY_THRESHOLD,
    DeltaConsistency,
    EffectiveModel,
    PerturbationResult,
    ValidityDiagnostics,
)
from .entanglement import EntanglementReport, LogNegVariant
from .spectral import ExtractionResult, Provenance, SpectralSweep, SuperoperatorMatrix
from .steady import SteadyState


__all__ = [
    "VALIDITY_THRESHOLD",
    "ClosedFormConstants",
    "DeltaConsistency",
    "DiffusionMatrix",
    "DriftMatrix",
    "EffectiveModel",
    "EntanglementReport",
    "ExtractionResult",
    "LogNegVariant",
    "ModelKind",
    "PerturbationResult",
    "Provenance",
    "SpectralSweep",
    "StableLimit",
    "SteadyState",
    "SuperoperatorMatrix",
    "TauResult",
    "Trajectory",
    "ValidityDiagnostics",
]

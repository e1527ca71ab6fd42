"""Scenario package."""

from .executor import error_kind, map_ordered
from .runner import SCENARIOS, ScenarioResult, entanglement_at_point, resolve_model, run_linearize
from .writers import ArtifactWriter, PlotSpec


__all__ = [
    "SCENARIOS",
    "ArtifactWriter",
    "PlotSpec",
    "ScenarioResult",
    "entanglement_at_point",
    "error_kind",
    "map_ordered",
    "resolve_model",
    "run_linearize",
]

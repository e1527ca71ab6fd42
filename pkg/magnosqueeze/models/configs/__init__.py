"""Configs models."""

from .loader import load_config
from .presets import PRESET_NAMES, PRESETS, preset
from .scenario import (
    AbsoluteUnits,
    AxisSpec,
    GridSpec,
    ScenarioConfig,
    ScenarioName,
    SeriesSpec,
    SimulationConfig,
    TimeSpec,
)


__all__ = [
    "PRESETS",
    "PRESET_NAMES",
    "AbsoluteUnits",
    "AxisSpec",
    "GridSpec",
    "ScenarioConfig",
    "ScenarioName",
    "SeriesSpec",
    "SimulationConfig",
    "TimeSpec",
    "load_config",
    "preset",
]

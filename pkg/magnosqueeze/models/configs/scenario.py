from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from magnosqueeze.models.params import LinearizedModel, SystemParams
from magnosqueeze.models.results import ModelKind


EXTRACT_AXES = ("g", "G", "r")
SERIES_NAMES = ("r", "delta_m")
SWEEP_AXES = ("g", "G", "r", "delta_m")


class ScenarioName(Enum):
    SPECTRUM = "spectrum"
    EXTRACT = "extract"
    DYNAMICS = "dynamics"
    SWEEP2D = "sweep2d"
    STEADY = "steady"
    LINEARIZE = "linearize"


class GridSpec(BaseModel):
    """Linear grid of `count` points from `min` to `max`"""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    start: float = Field(alias="min")
    stop: float = Field(alias="max")
    count: int = Field(ge=1)

    @model_validator(mode="after")
    def validate_count(self):
        if self.count == 1 and self.start != self.stop:
            raise ValueError("A single-point grid needs min == max")
        if self.count >= 2 and self.start == self.stop:
            raise ValueError(f"Grid with {self.count} points needs min != max")
        return self

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


class AxisSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str = Field(description="LinearizedModel field swept along this axis")
    grid: GridSpec


class SeriesSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    values: list[float] = Field(min_length=1)

    @field_validator("name")
    @classmethod
    def validate_name(cls, v):
        if v not in SERIES_NAMES:
            raise ValueError(f"Series must be one of {SERIES_NAMES}, got '{v}'")
        return v


class TimeSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    t_max: float = Field(gt=0, description="Final time in units of 1/omega_b")
    samples: int = Field(ge=2)


class AbsoluteUnits(BaseModel):
    """Absolute mode frequencies (rad/s) and temperature (K) for thermal occupations"""

    model_config = ConfigDict(frozen=True)

    omega_a: float = Field(gt=0)
    omega_m: float = Field(gt=0)
    omega_b: float = Field(gt=0)
    temperature: float = Field(ge=0)


class ScenarioConfig(BaseModel):
    """What to compute and on which grids."""

    model_config = ConfigDict(frozen=True)

    name: ScenarioName
    preset: str | None = None
    grid: GridSpec | None = Field(default=None, description="Photon-detuning grid of the spectrum")
    time: TimeSpec | None = None
    axes: list[AxisSpec] = Field(default_factory=list)
    series: SeriesSpec | None = None
    model: ModelKind = Field(default=ModelKind.FULL, description="Model whose E_N a 2D sweep records")
    window_points: int = Field(default=801, ge=3, description="Detuning points per extraction sweep")

    @model_validator(mode="after")
    def validate_scenario(self):
        """Check that each scenario carries the grids it needs"""

        match self.name:
            case ScenarioName.SPECTRUM:
                if self.grid is None or self.grid.count < 3:
                    raise ValueError("The spectrum scenario needs a detuning grid with at least 3 points")
            case ScenarioName.EXTRACT:
                if len(self.axes) != 1 or self.axes[0].name not in EXTRACT_AXES:
                    raise ValueError(f"The extract scenario needs exactly one axis among {EXTRACT_AXES}")
            case ScenarioName.DYNAMICS:
                if self.time is None:
                    raise ValueError("The dynamics scenario needs a time specification")
            case ScenarioName.SWEEP2D:
                names = [axis.name for axis in self.axes]
                if len(names) != 2 or len(set(names)) != 2 or any(n not in SWEEP_AXES for n in names):
                    raise ValueError(f"The sweep2d scenario needs two distinct axes among {SWEEP_AXES}")
            case _:
                pass
        return self


class SimulationConfig(BaseModel):
    """Scenario plus the physics inputs it runs on."""

    model_config = ConfigDict(frozen=True)

    scenario: ScenarioConfig
    params: LinearizedModel | None = None
    system: SystemParams | None = None
    absolute_units: AbsoluteUnits | None = None

    @model_validator(mode="after")
    def validate_inputs(self):
        if self.scenario.name is ScenarioName.LINEARIZE and self.system is None:
            raise ValueError("The linearize scenario needs a 'system' block of physical parameters")
        if self.params is None and self.system is None:
            raise ValueError("Configuration needs a 'params' or a 'system' block")
        return self

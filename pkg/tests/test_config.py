import json
from pathlib import Path

import numpy as np
import pytest
from pydantic import ValidationError

from magnosqueeze.errors import ConfigError
from magnosqueeze.models.configs import (
    PRESET_NAMES,
    AbsoluteUnits,
    GridSpec,
    ScenarioName,
    SeriesSpec,
    SimulationConfig,
    load_config,
    preset,
)
from magnosqueeze.models.results import ModelKind
from magnosqueeze.physics.core import thermal_occupation
from magnosqueeze.scenarios import resolve_model


def write_config(tmp_path, payload) -> Path:
    path = tmp_path / "config.json"
    path.write_text(json.dumps(payload) if not isinstance(payload, str) else payload, encoding="utf-8")
    return path


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_every_preset_validates(name):
    config = load_config(preset_name=name)

    assert config.scenario.preset == name
    assert config.params is not None


def test_fig4_preset_values():
    config = load_config(preset_name="fig4")

    assert config.scenario.name is ScenarioName.DYNAMICS
    assert config.scenario.time.t_max == 600.0
    assert config.scenario.time.samples == 601
    assert config.params.r == 0.25
    assert config.params.kappa_a == 100 * config.params.kappa_b


def test_fig5_sweeps_record_full_model():
    config = load_config(preset_name="fig5b")

    assert config.scenario.model is ModelKind.FULL
    assert [axis.name for axis in config.scenario.axes] == ["delta_m", "r"]
    assert config.params.g == config.params.G == 0.1


def test_file_overrides_preset_and_flags_override_file(tmp_path):
    path = write_config(
        tmp_path,
        {"scenario": {"preset": "fig4", "time": {"t_max": 100.0, "samples": 11}}, "params": {"g": 0.2}},
    )
    config = load_config(config_path=path, params={"g": 0.3, "r": 0.0})

    assert config.scenario.preset == "fig4"
    assert config.scenario.time.t_max == 100.0
    assert config.params.g == 0.3
    assert config.params.r == 0.0
    assert config.params.delta_m_prime == config.params.delta_m
    assert config.params.kappa_b == 1e-5


def test_scenario_argument_overrides_preset():
    config = load_config(scenario="steady", preset_name="fig4", params={"g": 0.001, "G": 0.001})

    assert config.scenario.name is ScenarioName.STEADY


def test_overrides_target_system_block(tmp_path):
    system = {"omega_a": -1.0, "omega_m": 3.0, "omega_b": 1.0, "omega_d": 0.0, "normalized": True}
    path = write_config(tmp_path, {"scenario": {"name": "linearize"}, "system": system})
    config = load_config(config_path=path, params={"g_ma": 0.1})

    assert config.params is None
    assert config.system.g_ma == 0.1


@pytest.mark.parametrize(
    "payload",
    [
        "{not json",
        "[1, 2, 3]",
        {"scenario": {"name": "dynamics"}, "params": {"delta_m": 3.0}},
        {"scenario": {"name": "sweep2d", "axes": [{"name": "g", "grid": {"min": 0, "max": 1, "count": 3}}]}},
        {"scenario": {"name": "spectrum"}, "params": {"delta_m": 3.0}},
        {"scenario": {"name": "linearize"}, "params": {"delta_m": 3.0}},
        {"scenario": {"name": "steady"}},
        {"params": {"delta_m": 3.0}},
        {"scenario": {"name": "steady"}, "params": {"delta_m": 3.0, "r": 0.2, "delta_m_prime": 3.0}},
    ],
)
def test_malformed_configurations_raise_config_error(tmp_path, payload):
    with pytest.raises(ConfigError):
        load_config(config_path=write_config(tmp_path, payload))


def test_missing_file_and_unknown_preset(tmp_path):
    with pytest.raises(ConfigError):
        load_config(config_path=tmp_path / "absent.json")
    with pytest.raises(ConfigError):
        load_config(preset_name="fig9")


def test_preset_is_a_copy():
    preset("fig4")["params"]["g"] = 1.0

    assert preset("fig4")["params"]["g"] == 0.1


def test_grid_spec():
    grid = GridSpec(min=0.0, max=1.0, count=5)

    np.testing.assert_allclose(grid.values, [0.0, 0.25, 0.5, 0.75, 1.0])
    assert GridSpec(start=0.2, stop=0.2, count=1).values.tolist() == [0.2]
    with pytest.raises(ValidationError):
        GridSpec(min=0.0, max=1.0, count=1)
    with pytest.raises(ValidationError):
        GridSpec(min=0.5, max=0.5, count=3)


def test_series_names_are_restricted():
    with pytest.raises(ValidationError):
        SeriesSpec(name="kappa_a", values=[1.0])


def test_resolve_model_applies_temperature():
    base = load_config(preset_name="fig4")
    units = AbsoluteUnits(omega_a=2e10, omega_m=2e10, omega_b=6e7, temperature=0.02)
    config = SimulationConfig(scenario=base.scenario, params=base.params, absolute_units=units)
    model, steady = resolve_model(config)

    assert steady is None
    assert model.N_b == pytest.approx(thermal_occupation(6e7, 0.02))
    assert model.N_a == pytest.approx(thermal_occupation(2e10, 0.02))
    assert model.r == 0.25


def test_resolve_model_linearizes_system(tmp_path):
    system = {
        "omega_a": -1.0,
        "omega_m": 3.0,
        "omega_b": 1.0,
        "omega_d": 0.0,
        "g_ma": 0.1,
        "drive_rabi": 0.01,
        "kappa_a": 1e-3,
        "kappa_m": 1e-2,
        "kappa_b": 1e-5,
        "normalized": True,
    }
    config = load_config(config_path=write_config(tmp_path, {"scenario": {"name": "linearize"}, "system": system}))
    model, steady = resolve_model(config)

    assert steady is not None
    assert model.delta_a == -1.0
    assert model.g == 0.1

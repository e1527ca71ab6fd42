import json
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from magnosqueeze.errors import ConfigError
from magnosqueeze.logger import LOG

from .presets import PRESETS, preset
from .scenario import SimulationConfig


def _merge(base: dict, update: dict) -> dict:
    """Recursively merge `update` into a copy of `base`; lists and scalars are replaced"""

    merged = dict(base)
    for key, value in update.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def _read_file(path: Path) -> dict:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError(f"Configuration file not found: {path}")
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"Cannot read configuration file {path}: {e}")

    if not isinstance(data, dict):
        raise ConfigError(f"Configuration file {path} must hold a JSON object")
    return data


def _format_errors(error: ValidationError) -> str:
    return "; ".join(f"{'.'.join(str(p) for p in e['loc']) or 'config'}: {e['msg']}" for e in error.errors())


def load_config(
    scenario: str | None = None,
    preset_name: str | None = None,
    config_path: Path | None = None,
    params: dict[str, Any] | None = None,
) -> SimulationConfig:
    """Resolve a configuration from a preset, then a JSON file, then command-line values."""

    raw: dict[str, Any] = {}

    file_data = _read_file(config_path) if config_path is not None else {}
    file_scenario = file_data.get("scenario")
    if file_scenario is not None and not isinstance(file_scenario, dict):
        raise ConfigError("The 'scenario' entry must be a JSON object")
    preset_name = preset_name or (file_scenario or {}).get("preset")
    if preset_name is not None:
        if preset_name not in PRESETS:
            raise ConfigError(f"Unknown preset '{preset_name}', expected one of {sorted(PRESETS)}")
        LOG.debug(f"Applying preset {preset_name}")
        raw = _merge(preset(preset_name), {"scenario": {"preset": preset_name}})

    raw = _merge(raw, file_data)

    overrides: dict[str, Any] = {}
    if scenario is not None:
        overrides["scenario"] = {"name": scenario}
    if params:
        target = "system" if "system" in raw and "params" not in raw else "params"
        overrides[target] = dict(params)
    raw = _merge(raw, overrides)

    if "name" not in raw.get("scenario", {}):
        raise ConfigError("No scenario given: pass SCENARIO, a preset or a config file naming one")

    try:
        return SimulationConfig.model_validate(raw)
    except ValidationError as e:
        raise ConfigError(f"Invalid configuration: {_format_errors(e)}")

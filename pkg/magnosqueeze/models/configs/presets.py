"""Scenario presets reproducing the published parameter sets.

Rates are in units of omega_b: kappa_b = 1e-5, kappa_a = 100 kappa_b, kappa_m = 10 kappa_a.
"""

import copy


FIG4_PARAMS = {
    "delta_m": 3.0,
    "g": 0.1,
    "G": 0.1,
    "r": 0.25,
    "kappa_a": 1e-3,
    "kappa_b": 1e-5,
    "kappa_m": 1e-2,
    "N_a": 0.0,
    "N_m": 0.0,
    "N_b": 10.0,
}

FIG2_PARAMS = {"delta_m": 3.0, "g": 0.1, "G": 0.1, "r": 0.0}


def _extract(axis: str, start: float, stop: float, count: int, series: str, values: list[float]) -> dict:
    return {
        "scenario": {
            "name": "extract",
            "axes": [{"name": axis, "grid": {"min": start, "max": stop, "count": count}}],
            "series": {"name": series, "values": values},
        },
        "params": dict(FIG2_PARAMS),
    }


def _sweep2d(axes: list[tuple[str, float, float]], **params) -> dict:
    return {
        "scenario": {
            "name": "sweep2d",
            "axes": [{"name": name, "grid": {"min": lo, "max": hi, "count": 20}} for name, lo, hi in axes],
            "model": "full",
        },
        "params": {**FIG4_PARAMS, **params},
    }


_COUPLING_G = _extract("g", 0.01, 0.3, 30, "r", [0.0, 0.25])
_COUPLING_BIG_G = _extract("G", 0.01, 0.3, 30, "r", [0.0, 0.25])
_SQUEEZING_R = _extract("r", 0.0, 0.5, 26, "delta_m", [3.0, 0.5])

PRESETS: dict[str, dict] = {
    "fig2": {
        "scenario": {"name": "spectrum", "grid": {"min": -1.2, "max": -0.8, "count": 4001}},
        "params": dict(FIG2_PARAMS),
    },
    # coupling and shift panels share one extraction table
    "fig3a": _COUPLING_G,
    "fig3b": _COUPLING_G,
    "fig3c": _COUPLING_BIG_G,
    "fig3d": _COUPLING_BIG_G,
    "fig3e": _SQUEEZING_R,
    "fig3f": _SQUEEZING_R,
    "fig4": {
        "scenario": {"name": "dynamics", "time": {"t_max": 600.0, "samples": 601}},
        "params": dict(FIG4_PARAMS),
    },
    "fig5a": _sweep2d([("g", 0.05, 0.3), ("G", 0.05, 0.3)], delta_m=3.0, r=0.25),
    "fig5b": _sweep2d([("delta_m", 0.5, 4.5), ("r", 0.0, 0.5)], g=0.1, G=0.1),
}

PRESET_NAMES = tuple(sorted(PRESETS))


def preset(name: str) -> dict:
    """Deep copy of a preset's raw configuration"""

    return copy.deepcopy(PRESETS[name])

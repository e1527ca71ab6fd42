"""Physics of the linearized cavity-magnomechanical system."""

from .core import normalize, occupations_from_temperature, thermal_occupation, vacuum_cm
from .dynamics import propagate, simulate, steady_state_cm
from .effective import delta_analytic, effective_model, g_eff_analytic
from .entanglement import logarithmic_negativity, squeezing_level_db
from .linearize import build_linearized, linearize as linearize_params, solve_steady_state
from .liouvillian import build_full, extract_effective, sweep


__all__ = [
    "build_full",
    "build_linearized",
    "delta_analytic",
    "effective_model",
    "extract_effective",
    "g_eff_analytic",
    "linearize_params",
    "logarithmic_negativity",
    "normalize",
    "occupations_from_temperature",
    "propagate",
    "simulate",
    "solve_steady_state",
    "squeezing_level_db",
    "steady_state_cm",
    "sweep",
    "thermal_occupation",
    "vacuum_cm",
]

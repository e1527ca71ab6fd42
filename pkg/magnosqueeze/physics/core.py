"""Units, thermal occupations and covariance primitives."""

import math

import numpy as np
from scipy import constants

from magnosqueeze.errors import DomainError, UnsupportedDimensionError
from magnosqueeze.logger import LOG
from magnosqueeze.models.params import SystemParams
from magnosqueeze.models.states import CovarianceState, physicality_margin, symplectic_form


def thermal_occupation(omega: float, temperature: float) -> float:
    """Bose-Einstein occupation of a mode at absolute angular frequency `omega` (rad/s)."""

    if not math.isfinite(omega) or omega <= 0:
        raise DomainError(f"Mode frequency must be positive, got {omega}")
    if not math.isfinite(temperature) or temperature < 0:
        raise DomainError(f"Temperature must be non-negative, got {temperature}")
    if temperature == 0:
        return 0.0

    x = constants.hbar * omega / (constants.k * temperature)
    if x > 700.0:
        return 0.0
    return 1.0 / math.expm1(x)


def occupations_from_temperature(params: SystemParams, temperature: float) -> SystemParams:
    """Fill the three thermal occupations from absolute mode frequencies"""

    if params.normalized:
        raise DomainError("Thermal occupations need absolute frequencies, got normalized parameters")

    return params.model_copy(
        update={
            "N_a": thermal_occupation(params.omega_a, temperature),
            "N_m": thermal_occupation(params.omega_m, temperature),
            "N_b": thermal_occupation(params.omega_b, temperature),
        }
    )


def normalize(params: SystemParams) -> SystemParams:
    """Express every frequency and rate in units of omega_b."""

    if params.normalized:
        return params
    if params.omega_b <= 0:
        raise DomainError(f"omega_b must be positive, got {params.omega_b}")

    LOG.debug(f"Normalizing parameters to omega_b = {params.omega_b}")
    return params.scaled(params.omega_b).model_copy(update={"normalized": True})


def vacuum_cm(n_modes: int) -> CovarianceState:
    if n_modes not in (2, 3):
        raise UnsupportedDimensionError(f"Vacuum state needs 2 or 3 modes, got {n_modes}")
    return CovarianceState(t=0.0, V=0.5 * np.eye(2 * n_modes))


__all__ = [
    "normalize",
    "occupations_from_temperature",
    "physicality_margin",
    "symplectic_form",
    "thermal_occupation",
    "vacuum_cm",
]

"""Covariance state models."""

from .basis import Mode, Quadrature, QuadratureBasis
from .covariance import PHYSICALITY_TOLERANCE, CovarianceState, physicality_margin, symplectic_form


__all__ = [
    "PHYSICALITY_TOLERANCE",
    "CovarianceState",
    "Mode",
    "Quadrature",
    "QuadratureBasis",
    "physicality_margin",
    "symplectic_form",
]

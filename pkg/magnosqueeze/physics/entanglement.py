"""Squeezing level and logarithmic negativity of the photon-phonon state."""

import math

import numpy as np

from magnosqueeze.errors import DomainError, NotApplicableError, UnphysicalStateError
from magnosqueeze.logger import LOG
from magnosqueeze.models.results import EntanglementReport, LogNegVariant, Trajectory
from magnosqueeze.models.states import CovarianceState, symplectic_form

from .dynamics import variance_Xphi_asymptotic


ZERO_POINT_VARIANCE = 0.5
DISCRIMINANT_TOLERANCE = 1e-10
CROSS_CHECK_TOLERANCE = 1e-6
PARTIAL_TRANSPOSE = np.diag([1.0, 1.0, 1.0, -1.0])


def _bipartite(V) -> np.ndarray:
    if isinstance(V, CovarianceState):
        return np.array(V.photon_phonon_block)
    V = np.asarray(V, dtype=float)
    if V.shape not in ((4, 4), (6, 6)):
        raise DomainError(f"Expected a 4x4 or 6x6 covariance matrix, got {V.shape}")
    return V[:4, :4]


def squeezing_level_db(delta_x: float) -> float:
    """Squeezing below the zero-point variance 1/2, in decibels"""

    if not math.isfinite(delta_x) or delta_x <= 0:
        raise DomainError(f"Squeezing level needs a positive variance, got {delta_x}")
    return -10.0 * math.log10(delta_x / ZERO_POINT_VARIANCE)


def symplectic_eigenvalue_pt(V) -> float:
    """Smallest symplectic eigenvalue of the partially transposed photon-phonon covariance"""

    V = _bipartite(V)
    transposed = PARTIAL_TRANSPOSE @ V @ PARTIAL_TRANSPOSE
    return float(np.abs(np.linalg.eigvals(1j * symplectic_form(2) @ transposed)).min())


def logarithmic_negativity(V) -> EntanglementReport:
    """Logarithmic negativity from the determinant invariants of the bipartite covariance.

    The partial-transpose eigenvalue is computed as well and a disagreement above
    CROSS_CHECK_TOLERANCE is logged.
    """

    V = _bipartite(V)
    P = np.linalg.det(V[:2, :2]) + np.linalg.det(V[2:, 2:]) - 2.0 * np.linalg.det(V[:2, 2:])
    det_V = np.linalg.det(V)

    discriminant = P * P - 4.0 * det_V
    if discriminant < -DISCRIMINANT_TOLERANCE * max(1.0, P * P):
        raise UnphysicalStateError(f"Covariance violates P^2 >= 4 det V (P={P:.6g}, det V={det_V:.6g})")
    denominator = P + math.sqrt(max(discriminant, 0.0))
    if denominator <= 0 or det_V <= 0:
        raise UnphysicalStateError(f"Logarithm argument is not positive (P={P:.6g}, det V={det_V:.6g})")

    # 2 (P - sqrt(P^2 - 4 det V)) rewritten without cancellation
    argument = 8.0 * det_V / denominator
    E_N = max(0.0, -0.5 * math.log(argument))

    nu_minus = symplectic_eigenvalue_pt(V)
    E_N_symplectic = max(0.0, -math.log(2.0 * nu_minus))
    if abs(E_N - E_N_symplectic) > CROSS_CHECK_TOLERANCE * max(1.0, E_N):
        LOG.warning(f"Determinant and symplectic logarithmic negativities differ: {E_N:.9g} vs {E_N_symplectic:.9g}")

    return EntanglementReport(E_N=E_N, variant=LogNegVariant.EXACT, P_val=float(P), nu_minus=nu_minus)


def logneg_closed_form(V11: float, V33: float, V13: float) -> EntanglementReport:
    """Logarithmic negativity for the vacuum-initial effective covariance structure"""

    eta = V11 + V33
    if eta <= 0:
        raise DomainError(f"eta = V11 + V33 must be positive, got {eta}")

    delta_prime = (4.0 * V13 * V13 - 4.0 * V11 * V33) / (eta * eta)
    if 1.0 + delta_prime < -DISCRIMINANT_TOLERANCE:
        raise UnphysicalStateError(f"1 + delta' = {1.0 + delta_prime:.3e} is negative")

    # 1 - sqrt(1 + delta') rewritten without cancellation
    factor = -delta_prime / (1.0 + math.sqrt(max(1.0 + delta_prime, 0.0)))
    if factor <= 0:
        raise UnphysicalStateError(f"Logarithm argument is not positive (delta' = {delta_prime:.6g})")

    return EntanglementReport(
        E_N=max(0.0, -math.log(eta * factor)),
        variant=LogNegVariant.CLOSED_FORM,
        eta=eta,
        delta_prime=delta_prime,
    )


def logneg_from_variance(variance_phi: float) -> EntanglementReport:
    if not math.isfinite(variance_phi) or variance_phi <= 0:
        raise DomainError(f"Joint-quadrature variance must be positive, got {variance_phi}")
    return EntanglementReport(
        E_N=max(0.0, -math.log(2.0 * variance_phi)),
        variant=LogNegVariant.ASYMPTOTIC,
        variance_phi=variance_phi,
    )


def logneg_asymptotic(g_eff: float, kappa_a: float, kappa_b: float, N_a: float, N_b: float) -> EntanglementReport:
    """Long-time logarithmic negativity of the diverging (unstable) effective model."""

    if g_eff**2 < kappa_a * kappa_b:
        raise NotApplicableError(
            "Stable regime: use steady_state_cm with logarithmic_negativity instead of the asymptotic form"
        )
    return logneg_from_variance(variance_Xphi_asymptotic(g_eff, kappa_a, kappa_b, N_a, N_b))


def trajectory_logneg(trajectory: Trajectory) -> np.ndarray:
    return np.array([logarithmic_negativity(state).E_N for state in trajectory.states])

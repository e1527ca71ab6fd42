"""Closed-form effective photon-phonon coupling and energy shift."""

import math

from magnosqueeze.errors import DomainError, SingularityError
from magnosqueeze.logger import LOG
from magnosqueeze.models.params import LinearizedModel
from magnosqueeze.models.results import (
    VALIDITY_THRESHOLD,
    DeltaConsistency,
    EffectiveModel,
    PerturbationResult,
    ValidityDiagnostics,
)


RESONANCE_TOLERANCE = 1e-9


def _resonant_denominator(model: LinearizedModel) -> tuple[float, float]:
    """cosh(2r) and delta_m^2 - omega_b^2 cosh^2(2r), checked away from the resonance"""

    c2 = math.cosh(2.0 * model.r)
    if abs(abs(model.delta_m) - model.omega_b * c2) < RESONANCE_TOLERANCE:
        raise SingularityError(
            f"Magnon detuning {model.delta_m} is resonant with omega_b cosh(2r) = {model.omega_b * c2}"
        )
    return c2, model.delta_m**2 - (model.omega_b * c2) ** 2


def g_eff_analytic(model: LinearizedModel) -> float:
    """Effective two-mode squeezing coupling between photon and phonon.

    Uses the Kerr-shifted magnon detuning carried by `model.delta_m`.
    """

    c2, denom = _resonant_denominator(model)
    e2r = math.exp(2.0 * model.r)
    return model.g * model.G * c2 * (model.omega_b * c2 - model.delta_m * e2r) / denom


def delta_analytic(model: LinearizedModel) -> float:
    """Energy shift of the photon-phonon resonance"""

    c2, denom = _resonant_denominator(model)
    e2r = math.exp(2.0 * model.r)
    numerator = 2.0 * model.G**2 * model.delta_m * e2r * c2 + model.g**2 * (model.delta_m - model.omega_b) * c2**2
    return numerator / denom


def resonant_delta_a(model: LinearizedModel) -> float:
    return -model.omega_b + delta_analytic(model)


def cooperativity(g_eff: float, kappa_a: float, kappa_b: float) -> float:
    """g_eff^2 / (kappa_a kappa_b); above 1 the covariance diverges"""

    if kappa_a <= 0 or kappa_b <= 0:
        raise DomainError(f"Cooperativity needs positive decay rates, got kappa_a={kappa_a}, kappa_b={kappa_b}")
    return g_eff**2 / (kappa_a * kappa_b)


def validity_ratios(model: LinearizedModel, delta_a: float) -> ValidityDiagnostics:
    """Coupling scales over the smallest magnon detuning gap."""

    gap = min(abs(model.delta_m_prime - model.omega_b), abs(model.delta_m_prime - delta_a))
    scales = {
        "g_cosh": abs(model.g) * math.cosh(model.r),
        "g_sinh": abs(model.g) * math.sinh(model.r),
        "G_exp": model.G * math.exp(model.r),
    }

    ratios = {}
    for name, scale in scales.items():
        if scale == 0.0:
            ratios[name] = 0.0
        elif gap == 0.0:
            ratios[name] = math.inf
        else:
            ratios[name] = scale / gap

    return ValidityDiagnostics(**ratios, gap=gap, threshold=VALIDITY_THRESHOLD)


def effective_model(model: LinearizedModel, delta_a: float | None = None) -> EffectiveModel:
    """g_eff and delta with the large-detuning diagnostics at `delta_a`.

    `delta_a` falls back to the model's photon detuning and then to the resonance -omega_b + delta.
    """

    g_eff = g_eff_analytic(model)
    delta = delta_analytic(model)
    if delta_a is None:
        delta_a = model.delta_a if model.delta_a is not None else -model.omega_b + delta

    validity = validity_ratios(model, delta_a)
    if validity.flagged:
        LOG.warning(
            f"Coupling/detuning ratio {validity.max_ratio:.3g} exceeds {validity.threshold}: "
            "the effective model is outside its large-detuning regime"
        )

    return EffectiveModel(g_eff=g_eff, delta=delta, theta=model.theta, delta_a=delta_a, validity=validity)


def _check_denominators(denominators: dict[str, float]) -> None:
    for name, value in denominators.items():
        if abs(value) < RESONANCE_TOLERANCE:
            raise SingularityError(f"Second-order shift diverges on the {name} resonance")


def perturbation_shifts(
    model: LinearizedModel, delta_a: float, n: int, l: int, k: int  # noqa: E741
) -> PerturbationResult:
    """Second-order shifts of |n, l, k> and |n+1, l, k+1> (photon, magnon, phonon Fock indices).

    Each state couples to four intermediate states through the photon-magnon terms
    (g cosh r, g sinh r) and the magnon-phonon term G e^r.
    """

    if min(n, l, k) < 0:
        raise DomainError(f"Fock indices must be non-negative, got ({n}, {l}, {k})")

    dm, wb = model.delta_m_prime, model.omega_b
    _check_denominators(
        {
            "delta_a = delta_m'": delta_a - dm,
            "delta_a = -delta_m'": delta_a + dm,
            "omega_b = delta_m'": wb - dm,
            "omega_b = -delta_m'": wb + dm,
        }
    )

    gc2 = model.g**2 * math.cosh(model.r) ** 2
    gs2 = model.g**2 * math.sinh(model.r) ** 2
    G2 = model.G**2 * math.exp(2.0 * model.r)

    def shift(n: int, k: int) -> float:
        return (
            (n - l) * gc2 / (delta_a - dm)
            - (n + l + 1) * gs2 / (delta_a + dm)
            + (k - l) * G2 / (wb - dm)
            - (k + l + 1) * G2 / (wb + dm)
        )

    g_eff = 0.0 if model.g == 0.0 or model.G == 0.0 else g_eff_analytic(model)
    return PerturbationResult(
        n=n,
        l=l,
        k=k,
        epsilon1=shift(n, k),
        epsilon2=shift(n + 1, k + 1),
        g_eff=g_eff,
        theta=model.theta,
    )


def delta_consistency(model: LinearizedModel) -> DeltaConsistency:
    """Resummed second-order shift A / (1 - B) against the closed-form delta"""

    shifts = perturbation_shifts(model, -model.omega_b, 0, 0, 0)
    dm, wb = model.delta_m_prime, model.omega_b
    gc2 = model.g**2 * math.cosh(model.r) ** 2
    gs2 = model.g**2 * math.sinh(model.r) ** 2
    G2 = model.G**2 * math.exp(2.0 * model.r)

    A = shifts.epsilon1 - shifts.epsilon2
    A_two_term = (G2 + gc2) / (dm + wb) + (G2 + gs2) / (dm - wb)
    B = gc2 / (dm + wb) ** 2 - gs2 / (dm - wb) ** 2
    if abs(1.0 - B) < RESONANCE_TOLERANCE:
        raise SingularityError(f"Resummation factor 1 - B vanishes (B = {B})")

    return DeltaConsistency(
        A=A,
        B=B,
        A_two_term=A_two_term,
        delta_resummed=A / (1.0 - B),
        delta_analytic=delta_analytic(model),
    )

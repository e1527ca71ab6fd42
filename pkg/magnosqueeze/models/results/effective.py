import cmath
import math

from pydantic import BaseModel, ConfigDict, Field, model_validator


VALIDITY_THRESHOLD = 0.3


class ValidityDiagnostics(BaseModel):
    """Coupling scales over the smallest magnon detuning gap."""

    model_config = ConfigDict(frozen=True)

    g_cosh: float = Field(ge=0, description="g cosh r / gap")
    g_sinh: float = Field(ge=0, description="g sinh r / gap")
    G_exp: float = Field(ge=0, description="G e^r / gap")
    gap: float = Field(ge=0, description="min(|delta_m' - omega_b|, |delta_m' - delta_a|)")
    threshold: float = Field(default=VALIDITY_THRESHOLD, gt=0)

    @property
    def max_ratio(self) -> float:
        return max(self.g_cosh, self.g_sinh, self.G_exp)

    @property
    def flagged(self) -> bool:
        return self.max_ratio > self.threshold


class EffectiveModel(BaseModel):
    """Two-mode squeezing Hamiltonian parameters g_eff and delta."""

    model_config = ConfigDict(frozen=True)

    g_eff: float
    delta: float
    theta: float = math.pi
    delta_a: float = Field(description="Photon detuning the diagnostics were evaluated at")
    validity: ValidityDiagnostics

    @model_validator(mode="after")
    def validate_finite(self):
        if not (math.isfinite(self.g_eff) and math.isfinite(self.delta)):
            raise ValueError("Effective coupling and shift must be finite")
        return self


class PerturbationResult(BaseModel):
    """Second-order energy shifts of |n, l, k> and |n+1, l, k+1> and their coupling."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=0, description="Photon Fock index")
    l: int = Field(ge=0, description="Magnon Fock index")  # noqa: E741
    k: int = Field(ge=0, description="Phonon Fock index")
    epsilon1: float
    epsilon2: float
    g_eff: float
    theta: float = math.pi

    @property
    def g_tilde(self) -> complex:
        return -math.sqrt((self.n + 1) * (self.k + 1)) * cmath.exp(0.5j * self.theta) * self.g_eff


class DeltaConsistency(BaseModel):
    """Second-order energy-shift expansion against the closed-form shift."""

    model_config = ConfigDict(frozen=True)

    A: float = Field(description="epsilon1 - epsilon2 at delta_a = -omega_b")
    B: float = Field(description="First-order correction coefficient of the shift")
    A_two_term: float = Field(description="A from the compact two-term expression")
    delta_resummed: float = Field(description="A / (1 - B)")
    delta_analytic: float

    @property
    def relative_gap(self) -> float:
        """|A/(1-B) - delta| / |delta|, zero when both vanish"""

        if self.delta_analytic == 0.0:
            return abs(self.delta_resummed)
        return abs(self.delta_resummed - self.delta_analytic) / abs(self.delta_analytic)

    @property
    def identity_gap(self) -> float:
        return abs(self.A - self.A_two_term)

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class LogNegVariant(Enum):
    EXACT = "exact"
    CLOSED_FORM = "closed_form"
    ASYMPTOTIC = "asymptotic"


class EntanglementReport(BaseModel):
    """Logarithmic negativity with the intermediate quantities of the variant used."""

    model_config = ConfigDict(frozen=True)

    E_N: float = Field(ge=0, description="Logarithmic negativity")
    variant: LogNegVariant
    P_val: float | None = Field(default=None, description="det V_a + det V_b - 2 det V_ab")
    eta: float | None = Field(default=None, description="V11 + V33")
    delta_prime: float | None = Field(default=None, description="(4 V13^2 - 4 V11 V33) / eta^2")
    nu_minus: float | None = Field(default=None, description="Smallest partial-transpose symplectic eigenvalue")
    variance_phi: float | None = Field(default=None, description="Asymptotic optimized joint-quadrature variance")

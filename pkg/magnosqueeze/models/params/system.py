import math

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


FREQUENCY_FIELDS = (
    "omega_a",
    "omega_m",
    "omega_b",
    "omega_d",
    "K_m",
    "g_ma",
    "g_mb",
    "drive_rabi",
    "kappa_a",
    "kappa_m",
    "kappa_b",
)


class SystemParams(BaseModel):
    """Physical inputs of the cavity-magnomechanical system.

    Frequencies and rates share one unit. After `normalize` they are expressed in units
    of the phonon frequency and `normalized` is set.
    """

    model_config = ConfigDict(frozen=True)

    omega_a: float = Field(description="Cavity photon angular frequency")
    omega_m: float = Field(description="Kittel magnon angular frequency")
    omega_b: float = Field(gt=0, description="Phonon angular frequency")
    omega_d: float = Field(description="Drive angular frequency")
    K_m: float = Field(default=0.0, description="Magnon Kerr coefficient")
    g_ma: float = Field(default=0.0, description="Bare photon-magnon coupling")
    g_mb: float = Field(default=0.0, description="Bare magnon-phonon coupling")
    drive_rabi: float = Field(default=0.0, ge=0, description="Drive Rabi rate on the magnon")
    kappa_a: float = Field(default=0.0, ge=0, description="Photon half-width decay rate")
    kappa_m: float = Field(default=0.0, ge=0, description="Magnon half-width decay rate")
    kappa_b: float = Field(default=0.0, ge=0, description="Phonon half-width decay rate")
    N_a: float = Field(default=0.0, ge=0, description="Photon thermal occupation")
    N_m: float = Field(default=0.0, ge=0, description="Magnon thermal occupation")
    N_b: float = Field(default=0.0, ge=0, description="Phonon thermal occupation")
    normalized: bool = Field(default=False, description="Set once every frequency is in units of omega_b")

    @field_validator("*", mode="after")
    @classmethod
    def validate_finite(cls, v):
        """Reject NaN and infinite inputs"""

        if isinstance(v, float) and not math.isfinite(v):
            raise ValueError("All frequencies, rates and occupations must be finite")
        return v

    @model_validator(mode="after")
    def validate_normalized_scale(self):
        if self.normalized and not math.isclose(self.omega_b, 1.0, rel_tol=1e-12):
            raise ValueError(f"Normalized parameters must have omega_b = 1, got {self.omega_b}")
        return self

    @property
    def delta_a(self) -> float:
        """Photon detuning from the drive"""

        return self.omega_a - self.omega_d

    @property
    def delta_m(self) -> float:
        """Magnon detuning from the drive, before the Kerr shift"""

        return self.omega_m - self.omega_d

    def scaled(self, factor: float) -> "SystemParams":
        """Divide every frequency and rate by `factor`"""

        values = self.model_dump()
        for name in FREQUENCY_FIELDS:
            values[name] = values[name] / factor
        return SystemParams.model_validate(values)

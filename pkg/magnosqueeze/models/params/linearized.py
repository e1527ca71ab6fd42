import math

from pydantic import BaseModel, ConfigDict, Field, model_validator


PRIMARY_FIELDS = (
    "delta_a",
    "delta_m",
    "omega_b",
    "r",
    "theta",
    "g",
    "G",
    "kappa_a",
    "kappa_b",
    "kappa_m",
    "N_a",
    "N_b",
    "N_m",
    "delta_m_bare",
)


class LinearizedModel(BaseModel):
    """Symbols of the linearized three-mode Hamiltonian, in units of omega_b.

    `delta_m` is the Kerr-shifted magnon detuning, `delta_m_prime` its Bogoliubov-rotated
    value and `abs_K` the Kerr amplitude. The last two are derived from `delta_m` and `r`
    whenever they are omitted, and checked against them otherwise.
    """

    model_config = ConfigDict(frozen=True)

    delta_a: float | None = Field(default=None, description="Photon detuning; None selects -omega_b + delta")
    delta_m: float = Field(description="Kerr-shifted magnon detuning")
    delta_m_prime: float = Field(default=0.0, description="delta_m / cosh(2r)")
    omega_b: float = Field(default=1.0, gt=0, description="Phonon frequency")
    r: float = Field(default=0.0, ge=0, description="Kerr squeezing parameter")
    theta: float = Field(default=math.pi, description="Phase of the Kerr amplitude")
    g: float = Field(default=0.0, description="Enhanced photon-magnon coupling")
    G: float = Field(default=0.0, ge=0, description="Enhanced magnon-phonon coupling magnitude")
    abs_K: float = Field(default=0.0, ge=0, description="|K| = tanh(2r) delta_m / 2")
    kappa_a: float = Field(default=0.0, ge=0)
    kappa_b: float = Field(default=0.0, ge=0)
    kappa_m: float = Field(default=0.0, ge=0)
    N_a: float = Field(default=0.0, ge=0)
    N_b: float = Field(default=0.0, ge=0)
    N_m: float = Field(default=0.0, ge=0)
    delta_m_bare: float | None = Field(default=None, description="omega_m - omega_d before the Kerr shift")

    @model_validator(mode="before")
    @classmethod
    def derive_rotated_fields(cls, data):
        """Fill delta_m_prime and abs_K from delta_m and r"""

        if not isinstance(data, dict):
            return data

        if data.get("delta_m") is None:
            return data

        data = dict(data)
        delta_m = float(data["delta_m"])
        r = float(data.get("r") or 0.0)
        if r > 0 and delta_m <= 0:
            raise ValueError(f"Kerr squeezing r={r} requires a positive magnon detuning, got delta_m={delta_m}")
        derived = {
            "delta_m_prime": delta_m / math.cosh(2.0 * r),
            "abs_K": abs(math.tanh(2.0 * r) * delta_m) / 2.0,
        }
        for name, value in derived.items():
            given = data.get(name)
            if given is not None and not math.isclose(float(given), value, rel_tol=1e-12, abs_tol=1e-300):
                raise ValueError(f"{name}={given} is inconsistent with delta_m={delta_m}, r={r} (expected {value})")
            data[name] = value
        return data

    @model_validator(mode="after")
    def validate_finite(self):
        for name in PRIMARY_FIELDS:
            value = getattr(self, name)
            if value is not None and not math.isfinite(value):
                raise ValueError(f"{name} must be finite")
        return self

    @classmethod
    def from_direct(cls, delta_m: float, r: float = 0.0, **kwargs) -> "LinearizedModel":
        """Build a model straight from the symbols, deriving the rotated detuning and |K|"""

        return cls.model_validate({"delta_m": delta_m, "r": r, **kwargs})

    def with_updates(self, **changes) -> "LinearizedModel":
        """Copy with changed primary fields, re-deriving the rotated ones"""

        unknown = set(changes) - set(PRIMARY_FIELDS)
        if unknown:
            raise ValueError(f"Cannot update derived or unknown fields: {sorted(unknown)}")

        values = {name: getattr(self, name) for name in PRIMARY_FIELDS}
        values.update(changes)
        return LinearizedModel.model_validate(values)

    @property
    def g_plus(self) -> float:
        return self.g * (math.sinh(self.r) + math.cosh(self.r))

    @property
    def g_minus(self) -> float:
        return self.g * (math.sinh(self.r) - math.cosh(self.r))

    @property
    def G_r(self) -> float:
        """Kerr-enhanced magnon-phonon quadrature coupling 2 G e^r"""

        return 2.0 * self.G * math.exp(self.r)

    @property
    def kappa_m_eff(self) -> float:
        """Magnon decay exponentially enlarged by the Kerr squeezing"""

        return math.exp(2.0 * self.r) * self.kappa_m

import math
from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from magnosqueeze.models.arrays import readonly
from magnosqueeze.models.states import CovarianceState


class ModelKind(Enum):
    EFFECTIVE = "effective"
    FULL = "full"


def _square(v, dims: tuple[int, ...]) -> np.ndarray:
    matrix = readonly(v)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] not in dims:
        raise ValueError(f"Expected a square matrix of dimension {dims}, got {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise ValueError("Matrix has non-finite entries")
    return matrix


class DriftMatrix(BaseModel):
    """Drift A of the Lyapunov equation V' = A V + V A^T + D."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    A: np.ndarray
    kind: ModelKind

    @field_validator("A", mode="before")
    @classmethod
    def validate_A(cls, v):
        return _square(v, (4, 6))

    @property
    def spectral_abscissa(self) -> float:
        return float(np.linalg.eigvals(self.A).real.max())

    @property
    def is_hurwitz(self) -> bool:
        return self.spectral_abscissa < 0.0


class DiffusionMatrix(BaseModel):
    """Diagonal noise matrix with entries kappa_o (2 N_o + 1)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    D: np.ndarray
    kind: ModelKind

    @field_validator("D", mode="before")
    @classmethod
    def validate_D(cls, v):
        matrix = _square(v, (4, 6))
        if np.any(matrix != np.diag(np.diag(matrix))):
            raise ValueError("Diffusion matrix must be diagonal")
        if np.any(np.diag(matrix) < 0):
            raise ValueError("Diffusion entries must be non-negative")
        return matrix


class ClosedFormConstants(BaseModel):
    """Constants of the vacuum-initial closed-form covariance solution.

    The angle varphi is stored through its cosine 2 g_eff / Omega and sine
    (kappa_a - kappa_b) / Omega. `c`, `c_a`, `c_b` and `C_asym` are the constant parts
    of V13, V11, V33 and of the joint variance.
    """

    model_config = ConfigDict(frozen=True)

    g_eff: float
    kappa_a: float
    kappa_b: float
    Omega_rate: float = Field(ge=0)
    cos_varphi: float
    sin_varphi: float
    kappa_plus: float
    kappa_minus: float
    C_plus: float
    C_minus: float
    C_zero: float
    c: float
    c_a: float
    c_b: float
    C_asym: float
    phi_opt: float

    @property
    def kappa_sum(self) -> float:
        return self.kappa_a + self.kappa_b

    @property
    def growth_rate(self) -> float:
        """Exponent of the divergent term, Omega - kappa_a - kappa_b"""

        return self.Omega_rate - self.kappa_sum


class StableLimit(BaseModel):
    model_config = ConfigDict(frozen=True)

    C: float = Field(description="Constant part of the joint variance")
    C_min: float = Field(description="Minimum of C over g_eff")
    is_stable: bool


class TauResult(BaseModel):
    """Time of minimal joint variance and the variance there."""

    model_config = ConfigDict(frozen=True)

    tau: float = Field(gt=0)
    delta_x: float


class Trajectory(BaseModel):
    """Covariance states on a strictly increasing time grid."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    times: np.ndarray
    states: list[CovarianceState]
    phi: float = Field(default=math.pi / 4, description="Joint-quadrature angle used by `dX_phi`")

    @field_validator("times", mode="before")
    @classmethod
    def validate_times(cls, v):
        times = readonly(v)
        if times.ndim != 1 or times.size == 0:
            raise ValueError("Trajectory needs a non-empty one-dimensional time grid")
        if np.any(np.diff(times) <= 0):
            raise ValueError("Trajectory times must be strictly increasing")
        return times

    @model_validator(mode="after")
    def validate_states(self):
        if len(self.states) != self.times.size:
            raise ValueError(f"{len(self.states)} states for {self.times.size} times")
        return self

    def with_angle(self, phi: float) -> "Trajectory":
        return Trajectory(times=self.times, states=self.states, phi=phi)

    def element(self, i: int, j: int) -> np.ndarray:
        return np.array([state.V[i, j] for state in self.states])

    @property
    def V11(self) -> np.ndarray:
        return self.element(0, 0)

    @property
    def V33(self) -> np.ndarray:
        return self.element(2, 2)

    @property
    def V13(self) -> np.ndarray:
        return self.element(0, 2)

    @property
    def dX(self) -> np.ndarray:
        return 0.5 * (self.V11 + self.V33 + 2.0 * self.V13)

    @property
    def dX_phi(self) -> np.ndarray:
        c, s = math.cos(self.phi), math.sin(self.phi)
        return c * c * self.V11 + s * s * self.V33 + math.sin(2.0 * self.phi) * self.V13

    @property
    def final(self) -> CovarianceState:
        return self.states[-1]

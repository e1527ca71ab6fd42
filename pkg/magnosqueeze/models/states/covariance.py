import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from magnosqueeze.errors import UnsupportedDimensionError


PHYSICALITY_TOLERANCE = 1e-9


def symplectic_form(n_modes: int) -> np.ndarray:
    """Block-diagonal symplectic form for the ordering [X_1, Y_1, X_2, Y_2, ...]"""

    if n_modes not in (2, 3):
        raise UnsupportedDimensionError(f"Only 2- and 3-mode systems are supported, got {n_modes}")
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def physicality_margin(V: np.ndarray) -> float:
    """Smallest eigenvalue of V + i Sigma / 2; non-negative for physical states"""

    sigma = symplectic_form(V.shape[0] // 2)
    return float(np.linalg.eigvalsh(V + 0.5j * sigma).min())


class CovarianceState(BaseModel):
    """Symmetric covariance matrix of 2 or 3 modes at time `t`."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    t: float = Field(default=0.0, description="Time in units of 1/omega_b")
    V: np.ndarray = Field(description="Covariance matrix in the fixed quadrature ordering")

    @field_validator("V", mode="before")
    @classmethod
    def validate_matrix(cls, v):
        """Coerce to a read-only symmetric float matrix of dimension 4 or 6"""

        matrix = np.array(v, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"Covariance matrix must be square, got shape {matrix.shape}")
        if matrix.shape[0] not in (4, 6):
            raise ValueError(f"Covariance matrix must be 4x4 or 6x6, got {matrix.shape}")
        if not np.all(np.isfinite(matrix)):
            raise ValueError("Covariance matrix has non-finite entries")

        matrix = 0.5 * (matrix + matrix.T)
        matrix.flags.writeable = False
        return matrix

    @property
    def n_modes(self) -> int:
        return self.V.shape[0] // 2

    @property
    def photon_phonon_block(self) -> np.ndarray:
        return self.V[:4, :4]

    def physicality_margin(self) -> float:
        return physicality_margin(self.V)

    def is_physical(self, tolerance: float = PHYSICALITY_TOLERANCE) -> bool:
        return self.physicality_margin() >= -tolerance

from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from magnosqueeze.models.arrays import readonly
from magnosqueeze.models.params import LinearizedModel


class Provenance(Enum):
    FULL = "full"
    EFFECTIVE = "effective"


class SuperoperatorMatrix(BaseModel):
    """Real generator R = iL of the quadrature equations u' = R u."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    R: np.ndarray
    provenance: Provenance

    @field_validator("R", mode="before")
    @classmethod
    def validate_R(cls, v):
        matrix = readonly(v)
        if matrix.shape not in ((4, 4), (6, 6)):
            raise ValueError(f"Superoperator must be 4x4 or 6x6, got {matrix.shape}")
        return matrix

    @property
    def dim(self) -> int:
        return self.R.shape[0]

    @property
    def L(self) -> np.ndarray:
        """Liouvillian matrix, L = -i R"""

        return -1j * self.R

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues of L: -i eig(R)"""

        return -1j * np.linalg.eigvals(self.R)


class SpectralSweep(BaseModel):
    """Liouvillian eigenvalue branches tracked across a photon-detuning grid.

    `branches[i, k]` is the eigenvalue of branch k at `grid[i]`. `pairing` holds the two
    branches that split around the photon-phonon resonance, empty when none split.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: np.ndarray
    branches: np.ndarray
    pairing: tuple[int, ...] = Field(default=())
    defections: int = Field(default=0, ge=0, description="Grid steps with an ambiguous branch assignment")
    model: LinearizedModel

    @field_validator("grid", mode="before")
    @classmethod
    def validate_grid(cls, v):
        grid = readonly(v)
        if grid.ndim != 1 or grid.size < 3:
            raise ValueError("Detuning grid must be one-dimensional with at least 3 points")
        steps = np.diff(grid)
        if not (np.all(steps > 0) or np.all(steps < 0)):
            raise ValueError("Detuning grid must be strictly monotone")
        return grid

    @field_validator("branches", mode="before")
    @classmethod
    def validate_branches(cls, v):
        return readonly(v, dtype=complex)

    @model_validator(mode="after")
    def validate_shapes(self):
        if self.branches.shape[0] != self.grid.size:
            raise ValueError(f"Branches cover {self.branches.shape[0]} points, grid has {self.grid.size}")
        if len(self.pairing) not in (0, 2):
            raise ValueError("Pairing must name exactly two branches")
        return self

    @property
    def dim(self) -> int:
        return self.branches.shape[1]

    def real_parts(self) -> np.ndarray:
        return self.branches.real

    def imag_parts(self) -> np.ndarray:
        return self.branches.imag


class ExtractionResult(BaseModel):
    """Effective coupling and energy shift read off the level-attraction splitting."""

    model_config = ConfigDict(frozen=True)

    g_eff_num: float = Field(description="Signed effective coupling; the magnitude is the maximal splitting")
    delta_num: float = Field(description="Energy shift, delta_a_star + omega_b")
    omega_b: float = Field(default=1.0, gt=0)
    grid_resolution: float = Field(gt=0, description="Grid step of the underlying sweep")
    interval: tuple[float, float] = Field(description="Detuning interval of the splitting")

    @property
    def delta_a_star(self) -> float:
        """Detuning of the maximal splitting"""

        return -self.omega_b + self.delta_num

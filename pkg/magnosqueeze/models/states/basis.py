"""Fixed quadrature ordering shared by every module."""

from enum import Enum

from magnosqueeze.errors import UnsupportedDimensionError


class Mode(Enum):
    """Bosonic modes in ordering position."""

    PHOTON = "a"
    PHONON = "b"
    MAGNON = "m"


class Quadrature(Enum):
    X = "X"
    Y = "Y"


class QuadratureBasis:
    """Index maps for the ordering [X_a, Y_a, X_b, Y_b, X_m, Y_m].

    The effective model uses the first four entries.
    """

    MODES = (Mode.PHOTON, Mode.PHONON, Mode.MAGNON)
    QUADRATURES = (Quadrature.X, Quadrature.Y)

    def __init__(self, n_modes: int = 3):
        if n_modes not in (2, 3):
            raise UnsupportedDimensionError(f"Quadrature basis supports 2 or 3 modes, got {n_modes}")
        self.n_modes = n_modes

    @property
    def dim(self) -> int:
        return 2 * self.n_modes

    def index(self, mode: Mode, quadrature: Quadrature) -> int:
        position = self.MODES.index(mode)
        if position >= self.n_modes:
            raise ValueError(f"Mode {mode.name} is not part of a {self.n_modes}-mode basis")
        return 2 * position + self.QUADRATURES.index(quadrature)

    def entry(self, index: int) -> tuple[Mode, Quadrature]:
        """Inverse of `index`"""

        if not 0 <= index < self.dim:
            raise ValueError(f"Index {index} outside a {self.dim}-dimensional basis")
        return self.MODES[index // 2], self.QUADRATURES[index % 2]

    def label(self, index: int) -> str:
        mode, quadrature = self.entry(index)
        return f"{quadrature.value}_{mode.value}"

    def labels(self) -> list[str]:
        return [self.label(i) for i in range(self.dim)]

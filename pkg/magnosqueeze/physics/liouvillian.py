"""Liouvillian superoperators, eigenvalue branch tracking and splitting extraction.

The quadrature equations read u' = R u with R = iL, so eig(L) = -i eig(R). The plotted
"real part" of a branch is Im(eig R) and its "imaginary part" is -Re(eig R).
"""

import numpy as np
from scipy.optimize import linear_sum_assignment, minimize_scalar

from magnosqueeze.errors import DomainError, ExtractionError, SingularityError
from magnosqueeze.logger import LOG
from magnosqueeze.models.params import LinearizedModel
from magnosqueeze.models.results import ExtractionResult, Provenance, SpectralSweep, SuperoperatorMatrix

from .effective import g_eff_analytic, resonant_delta_a


SPLITTING_TOLERANCE = 1e-7
AMBIGUITY_RATIO = 0.9
REFINE_TOLERANCE = 1e-7


def resolve_delta_a(model: LinearizedModel, delta_a: float | None = None) -> float:
    """Explicit detuning, else the model's, else the resonance -omega_b + delta"""

    if delta_a is not None:
        return float(delta_a)
    if model.delta_a is not None:
        return model.delta_a
    return resonant_delta_a(model)


def build_full(model: LinearizedModel, delta_a: float | None = None) -> SuperoperatorMatrix:
    """6x6 generator of the photon, phonon and Bogoliubov-magnon quadratures"""

    delta_a = resolve_delta_a(model, delta_a)
    wb, dm = model.omega_b, model.delta_m_prime
    gp, gm, Gr = model.g_plus, model.g_minus, model.G_r

    R = np.array(
        [
            [0.0, delta_a, 0.0, 0.0, 0.0, gp],
            [-delta_a, 0.0, 0.0, 0.0, gm, 0.0],
            [0.0, 0.0, 0.0, wb, 0.0, 0.0],
            [0.0, 0.0, -wb, 0.0, 0.0, -Gr],
            [0.0, gp, Gr, 0.0, 0.0, dm],
            [gm, 0.0, 0.0, 0.0, -dm, 0.0],
        ]
    )
    return SuperoperatorMatrix(R=R, provenance=Provenance.FULL)


def build_effective(g_eff: float, delta_a: float, omega_b: float = 1.0) -> SuperoperatorMatrix:
    """4x4 generator of the effective photon-phonon two-mode squeezing Hamiltonian"""

    R = np.array(
        [
            [0.0, delta_a, g_eff, 0.0],
            [-delta_a, 0.0, 0.0, -g_eff],
            [g_eff, 0.0, 0.0, omega_b],
            [0.0, -g_eff, -omega_b, 0.0],
        ]
    )
    return SuperoperatorMatrix(R=R, provenance=Provenance.EFFECTIVE)


def eigenvalues_effective_analytic(g_eff: float, delta_a: float, omega_b: float = 1.0) -> np.ndarray:
    """E_+, E_-, -E_-, -E_+ of the effective Liouvillian (principal square root)."""

    root = np.sqrt(complex((omega_b + delta_a) ** 2 - 4.0 * g_eff**2))
    e_plus = (omega_b - delta_a + root) / 2.0
    e_minus = (omega_b - delta_a - root) / 2.0
    return np.array([e_plus, e_minus, -e_minus, -e_plus], dtype=complex)


def liouvillian_eigenvalues(matrix: SuperoperatorMatrix) -> np.ndarray:
    return matrix.eigenvalues()


def _full_stack(model: LinearizedModel, grid: np.ndarray) -> np.ndarray:
    base = build_full(model, 0.0).R
    stack = np.repeat(base[np.newaxis, :, :], grid.size, axis=0)
    stack[:, 0, 1] = grid
    stack[:, 1, 0] = -grid
    return stack


def _track(values: np.ndarray, vectors: np.ndarray) -> tuple[np.ndarray, int]:
    """Reorder eigenpairs so each column follows one branch along the grid.

    Consecutive points are matched by maximal total eigenvector overlap. A step counts as a
    defection when some branch has a competing overlap within AMBIGUITY_RATIO of its own.
    """

    tracked = np.empty_like(values)
    tracked[0] = values[0]
    previous = vectors[0]
    defections = 0

    for i in range(1, values.shape[0]):
        overlap = np.abs(previous.conj().T @ vectors[i])
        rows, cols = linear_sum_assignment(-overlap)

        assigned = overlap[rows, cols]
        competing = overlap.copy()
        competing[rows, cols] = -np.inf
        if np.any(competing.max(axis=1) >= AMBIGUITY_RATIO * assigned):
            defections += 1

        tracked[i] = values[i, cols]
        previous = vectors[i][:, cols]

    return tracked, defections


def _pair(branches: np.ndarray) -> tuple[int, ...]:
    """Two branches with the largest imaginary excursion and positive real part there."""

    heights = np.abs(branches.imag).max(axis=0)
    order = [k for k in np.argsort(-heights, kind="stable") if heights[k] > SPLITTING_TOLERANCE]
    if len(order) < 2:
        return ()

    peaks = np.abs(branches.imag).argmax(axis=0)
    positive = [k for k in order if branches[peaks[k], k].real > 0]
    chosen = positive[:2] if len(positive) >= 2 else order[:2]
    return tuple(sorted(int(k) for k in chosen))


def sweep(model: LinearizedModel, delta_a_grid) -> SpectralSweep:
    """Eigenvalues of the full Liouvillian tracked across a photon-detuning grid."""

    grid = np.asarray(delta_a_grid, dtype=float)
    if grid.ndim != 1 or grid.size < 3:
        raise DomainError("A spectral sweep needs a one-dimensional grid with at least 3 points")
    steps = np.diff(grid)
    if not (np.all(steps > 0) or np.all(steps < 0)):
        raise DomainError("Detuning grid must be strictly monotone")

    values, vectors = np.linalg.eig(_full_stack(model, grid))
    branches, defections = _track(-1j * values.astype(complex), vectors.astype(complex))

    if defections:
        LOG.warning(f"Branch tracking was ambiguous at {defections} of {grid.size - 1} grid steps")

    return SpectralSweep(
        grid=grid,
        branches=branches,
        pairing=_pair(branches),
        defections=defections,
        model=model,
    )


def _ordered(a: float, b: float) -> tuple[float, float]:
    return (float(min(a, b)), float(max(a, b)))


def splitting_interval(sweep: SpectralSweep, tolerance: float = SPLITTING_TOLERANCE) -> list[tuple[float, float]]:
    """Contiguous detuning intervals where both paired branches carry an imaginary part"""

    if not sweep.pairing:
        return []

    split = np.all(np.abs(sweep.branches[:, list(sweep.pairing)].imag) > tolerance, axis=1)
    intervals = []
    start = None
    for i, flag in enumerate(split):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            intervals.append(_ordered(sweep.grid[start], sweep.grid[i - 1]))
            start = None
    if start is not None:
        intervals.append(_ordered(sweep.grid[start], sweep.grid[-1]))
    return intervals


def _splitting_height(model: LinearizedModel, delta_a: float) -> float:
    return float(np.abs(build_full(model, delta_a).eigenvalues().imag).max())


def extract_effective(sweep: SpectralSweep, refine_tol: float = REFINE_TOLERANCE) -> ExtractionResult:
    """g_eff and delta from the maximal level-attraction splitting.

    The grid argmax is refined by golden-section search on the re-diagonalized splitting.
    The height only fixes |g_eff|; its sign is taken from the closed-form coupling.
    """

    intervals = splitting_interval(sweep)
    if not intervals:
        raise ExtractionError("No level-attraction splitting found in the spectral sweep")

    model, grid = sweep.model, sweep.grid
    heights = np.abs(sweep.branches.imag).max(axis=1)
    i = int(heights.argmax())

    def objective(x: float) -> float:
        return -_splitting_height(model, x)

    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, grid.size - 1)]
    lo, hi = min(lo, hi), max(lo, hi)
    x_star, height = float(grid[i]), float(heights[i])
    try:
        scale = max(abs(grid[i]), 1.0)
        result = minimize_scalar(objective, bracket=(lo, grid[i], hi), method="golden", tol=refine_tol / (2.0 * scale))
    except ValueError:
        LOG.debug(f"Splitting maximum at {grid[i]:.9f} is not bracketed, falling back to bounded search")
        result = minimize_scalar(objective, bounds=(lo, hi), method="bounded", options={"xatol": refine_tol})

    if -result.fun >= height:
        x_star, height = float(result.x), float(-result.fun)

    try:
        sign = -1.0 if g_eff_analytic(model) <= 0 else 1.0
    except SingularityError:
        sign = -1.0

    containing = next((iv for iv in intervals if iv[0] - 1e-12 <= x_star <= iv[1] + 1e-12), intervals[0])
    return ExtractionResult(
        g_eff_num=sign * height,
        delta_num=x_star + model.omega_b,
        omega_b=model.omega_b,
        grid_resolution=float(np.abs(np.diff(grid)).mean()),
        interval=containing,
    )

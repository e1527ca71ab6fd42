"""Covariance-matrix dynamics of the effective and full linearized models.

Both models obey V' = A V + V A^T + D. Propagation is exact for piecewise-constant steps:
one matrix exponential of the block matrix [[A, D], [0, -A^T]] h yields e^{Ah} and the
noise integral Q(h), which are cached per step size.
"""

import math

import numpy as np
from scipy.linalg import expm, solve_continuous_lyapunov
from scipy.optimize import bisect

from magnosqueeze.errors import DomainError, InstabilityError, NotApplicableError, PropagationError, SingularityError
from magnosqueeze.logger import LOG
from magnosqueeze.models.params import LinearizedModel
from magnosqueeze.models.results import (
    ClosedFormConstants,
    DiffusionMatrix,
    DriftMatrix,
    ModelKind,
    StableLimit,
    TauResult,
    Trajectory,
)
from magnosqueeze.models.states import CovarianceState

from .core import vacuum_cm
from .effective import g_eff_analytic
from .liouvillian import build_full


SINGULAR_TOLERANCE = 1e-14
SYMMETRY_TOLERANCE = 1e-12
LYAPUNOV_RESIDUAL = 1e-10
SUBDIVISION_NORM = 16.0
TAU_TOLERANCE = 1e-12
MAX_BRACKET_DOUBLINGS = 200


def build_drift_effective(g_eff: float, kappa_a: float, kappa_b: float) -> DriftMatrix:
    """Drift of the effective model: +g_eff couples the X quadratures, -g_eff the Y ones"""

    if kappa_a < 0 or kappa_b < 0:
        raise DomainError(f"Decay rates must be non-negative, got kappa_a={kappa_a}, kappa_b={kappa_b}")

    A = np.array(
        [
            [-kappa_a, 0.0, g_eff, 0.0],
            [0.0, -kappa_a, 0.0, -g_eff],
            [g_eff, 0.0, -kappa_b, 0.0],
            [0.0, -g_eff, 0.0, -kappa_b],
        ]
    )
    return DriftMatrix(A=A, kind=ModelKind.EFFECTIVE)


def build_drift_full(model: LinearizedModel, delta_a: float | None = None) -> DriftMatrix:
    """Full drift iL plus damping; the magnon decay is enlarged to e^{2r} kappa_m"""

    damping = np.repeat([model.kappa_a, model.kappa_b, model.kappa_m_eff], 2)
    A = build_full(model, delta_a).R - np.diag(damping)
    return DriftMatrix(A=A, kind=ModelKind.FULL)


def build_diffusion(kind: ModelKind, model: LinearizedModel) -> DiffusionMatrix:
    entries = [model.kappa_a * (2.0 * model.N_a + 1.0), model.kappa_b * (2.0 * model.N_b + 1.0)]
    if kind is ModelKind.FULL:
        entries.append(model.kappa_m_eff * (2.0 * model.N_m + 1.0))
    return DiffusionMatrix(D=np.diag(np.repeat(entries, 2)), kind=kind)


def time_grid(t_max: float, samples: int) -> np.ndarray:
    if not math.isfinite(t_max) or t_max <= 0:
        raise DomainError(f"t_max must be positive, got {t_max}")
    if samples < 2:
        raise DomainError(f"A time grid needs at least 2 samples, got {samples}")
    return np.linspace(0.0, t_max, samples)


def _matrix(value) -> np.ndarray:
    if isinstance(value, DriftMatrix):
        return value.A
    if isinstance(value, DiffusionMatrix):
        return value.D
    return np.asarray(value, dtype=float)


class _StepPropagator:
    """(e^{Ah}, Q(h)) pairs for one drift and diffusion, cached per step size."""

    def __init__(self, A: np.ndarray, D: np.ndarray):
        self.A = A
        self.D = D
        self.n = A.shape[0]
        self.norm = float(np.abs(np.block([[A, D], [np.zeros_like(A), -A.T]])).sum(axis=0).max())
        self.cache: dict[float, tuple[np.ndarray, np.ndarray]] = {}

    def _van_loan(self, h: float) -> tuple[np.ndarray, np.ndarray]:
        n = self.n
        block = np.block([[self.A, self.D], [np.zeros((n, n)), -self.A.T]])
        E = expm(block * h)
        F = E[:n, :n]
        return F, E[:n, n:] @ F.T

    def step(self, h: float) -> tuple[np.ndarray, np.ndarray]:
        key = float(f"{h:.12g}")
        if key in self.cache:
            return self.cache[key]

        doublings = 0
        if self.norm * h > SUBDIVISION_NORM:
            doublings = math.ceil(math.log2(self.norm * h / SUBDIVISION_NORM))
            LOG.debug(f"Subdividing step {h:.6g} into {2**doublings} substeps")

        F, Q = self._van_loan(h / 2**doublings)
        for _ in range(doublings):
            Q = F @ Q @ F.T + Q
            F = F @ F

        if not (np.all(np.isfinite(F)) and np.all(np.isfinite(Q))):
            raise PropagationError(f"Matrix exponential overflowed for step {h:.6g}")

        LOG.debug(f"Cached propagator for step {key}")
        self.cache[key] = (F, Q)
        return F, Q


def propagate(A, D, V0, times) -> Trajectory:
    """Covariance matrices at `times` starting from `V0`.

    `V0` is a CovarianceState (its `t` is the start time) or a symmetric array taken at
    `times[0]`. Every state is propagated as V -> F V F^T + Q(h).
    """

    A, D = _matrix(A), _matrix(D)
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0 or np.any(np.diff(times) <= 0):
        raise DomainError("Propagation times must be a non-empty strictly increasing sequence")

    if isinstance(V0, CovarianceState):
        t0, V = V0.t, np.array(V0.V)
    else:
        V = np.asarray(V0, dtype=float)
        t0 = float(times[0])
        if V.shape != A.shape:
            raise DomainError(f"Initial covariance has shape {V.shape}, drift has {A.shape}")
        if np.abs(V - V.T).max() > SYMMETRY_TOLERANCE * max(1.0, np.abs(V).max()):
            raise DomainError("Initial covariance matrix is not symmetric")
    if t0 < 0 or times[0] < t0:
        raise DomainError(f"Propagation must start at t0 >= 0 and not before {t0}")

    propagator = _StepPropagator(A, D)
    states = []
    current = t0
    for t in times:
        if t > current:
            F, Q = propagator.step(t - current)
            V = F @ V @ F.T + Q
            V = 0.5 * (V + V.T)
            current = t
        states.append(CovarianceState(t=float(t), V=V))

    unphysical = sum(1 for state in states if not state.is_physical())
    if unphysical:
        LOG.warning(f"{unphysical} of {len(states)} propagated covariance matrices violate the uncertainty relation")

    return Trajectory(times=times, states=states)


def steady_state_cm(A, D) -> CovarianceState:
    """Time-invariant covariance solving A V + V A^T + D = 0 for a Hurwitz drift."""

    A, D = _matrix(A), _matrix(D)
    abscissa = float(np.linalg.eigvals(A).real.max())
    if abscissa >= 0:
        raise InstabilityError(
            f"Drift is not Hurwitz (spectral abscissa {abscissa:.6g}); "
            "a steady state requires g_eff^2 < kappa_a kappa_b",
            spectral_abscissa=abscissa,
        )

    V = solve_continuous_lyapunov(A, -D)
    V = 0.5 * (V + V.T)

    residual = float(np.linalg.norm(A @ V + V @ A.T + D))
    bound = LYAPUNOV_RESIDUAL * float(np.linalg.norm(D))
    if residual > bound:
        LOG.warning(f"Steady-state Lyapunov residual {residual:.3e} exceeds {bound:.3e}")

    return CovarianceState(t=math.inf, V=V)


def _rates(g_eff: float, kappa_a: float, kappa_b: float, N_a: float, N_b: float):
    Omega = math.sqrt(4.0 * g_eff**2 + (kappa_a - kappa_b) ** 2)
    kappa_plus = kappa_a * (2.0 * N_a + 1.0) + kappa_b * (2.0 * N_b + 1.0)
    kappa_minus = kappa_a * (2.0 * N_a + 1.0) - kappa_b * (2.0 * N_b + 1.0)
    if Omega == 0.0:
        # g_eff = 0 with equal rates: every exponent coincides, take the g_eff -> 0+ branch
        return Omega, 1.0, 0.0, kappa_plus, kappa_minus
    return Omega, 2.0 * g_eff / Omega, (kappa_a - kappa_b) / Omega, kappa_plus, kappa_minus


def optimal_angle(g_eff: float, kappa_a: float, kappa_b: float) -> tuple[float, bool]:
    """Joint-quadrature angle that cancels the divergent term of the variance.

    Returns the angle in (-pi/2, pi/2] and whether the input was degenerate (g_eff = 0 and
    kappa_a = kappa_b), in which case pi/4 is returned.
    """

    if g_eff == 0.0 and kappa_a == kappa_b:
        return math.pi / 4.0, True

    phi = (math.atan2(kappa_a - kappa_b, 2.0 * g_eff) - math.pi / 2.0) / 2.0
    if phi <= -math.pi / 2.0:
        phi += math.pi
    return phi, False


def optimal_angle_from_cm(V) -> float:
    """Angle minimizing cos^2 V11 + sin^2 V33 + sin 2phi V13 for an arbitrary covariance"""

    V = _photon_phonon(V)
    block = np.array([[V[0, 0], V[0, 2]], [V[0, 2], V[2, 2]]])
    _, vectors = np.linalg.eigh(block)
    c, s = vectors[:, 0]
    phi = math.atan2(s, c)
    if phi <= -math.pi / 2.0:
        phi += math.pi
    elif phi > math.pi / 2.0:
        phi -= math.pi
    return phi


def closed_form_constants(g_eff: float, kappa_a: float, kappa_b: float, N_a: float, N_b: float) -> ClosedFormConstants:
    """Constants of the vacuum-initial closed-form covariance."""

    P = kappa_a * kappa_b - g_eff**2
    if abs(P) < SINGULAR_TOLERANCE:
        raise SingularityError(f"kappa_a kappa_b - g_eff^2 = {P:.3e} is too close to zero; use propagate()")
    kappa_sum = kappa_a + kappa_b
    if kappa_sum <= 0:
        raise DomainError("Closed-form covariance needs a positive total decay rate")

    Omega, cos_v, sin_v, kappa_plus, kappa_minus = _rates(g_eff, kappa_a, kappa_b, N_a, N_b)
    c = g_eff * (N_a + N_b + 1.0) * kappa_a * kappa_b / (kappa_sum * P)

    return ClosedFormConstants(
        g_eff=g_eff,
        kappa_a=kappa_a,
        kappa_b=kappa_b,
        Omega_rate=Omega,
        cos_varphi=cos_v,
        sin_varphi=sin_v,
        kappa_plus=kappa_plus,
        kappa_minus=kappa_minus,
        C_plus=0.25 + (kappa_plus - sin_v * kappa_minus) / (4.0 * (Omega - kappa_sum)),
        C_minus=0.25 - (kappa_plus + sin_v * kappa_minus) / (4.0 * (Omega + kappa_sum)),
        C_zero=cos_v * kappa_minus / (2.0 * kappa_sum),
        c=c,
        c_a=N_a + 0.5 + g_eff * c / kappa_a if kappa_a > 0 else math.nan,
        c_b=N_b + 0.5 + g_eff * c / kappa_b if kappa_b > 0 else math.nan,
        C_asym=0.5 * (N_a + N_b + 1.0) * kappa_a * kappa_b * (2.0 * g_eff + kappa_sum) / (P * kappa_sum),
        phi_opt=optimal_angle(g_eff, kappa_a, kappa_b)[0],
    )


def _exponentials(k: ClosedFormConstants, t):
    t = np.asarray(t, dtype=float)
    return (
        np.exp(k.growth_rate * t),
        np.exp(-k.kappa_sum * t),
        np.exp(-(k.Omega_rate + k.kappa_sum) * t),
    )


def cm_closed_form(g_eff: float, kappa_a: float, kappa_b: float, N_a: float, N_b: float, t):
    """V11, V33 and V13 from vacuum; V22 = V11, V44 = V33 and V24 = -V13."""

    k = closed_form_constants(g_eff, kappa_a, kappa_b, N_a, N_b)
    e_plus, e_zero, e_minus = _exponentials(k, t)
    s, c = k.sin_varphi, k.cos_varphi

    V11 = k.C_plus * (1 - s) * e_plus - k.C_zero * c * e_zero + k.C_minus * (1 + s) * e_minus + k.c_a
    V33 = k.C_plus * (1 + s) * e_plus + k.C_zero * c * e_zero + k.C_minus * (1 - s) * e_minus + k.c_b
    V13 = k.C_plus * c * e_plus - k.C_zero * s * e_zero - k.C_minus * c * e_minus + k.c
    return V11, V33, V13


def closed_form_covariance(g_eff: float, kappa_a: float, kappa_b: float, N_a: float, N_b: float, t: float):
    V11, V33, V13 = (float(x) for x in cm_closed_form(g_eff, kappa_a, kappa_b, N_a, N_b, t))
    V = np.array(
        [
            [V11, 0.0, V13, 0.0],
            [0.0, V11, 0.0, -V13],
            [V13, 0.0, V33, 0.0],
            [0.0, -V13, 0.0, V33],
        ]
    )
    return CovarianceState(t=t, V=V)


def _photon_phonon(V) -> np.ndarray:
    if isinstance(V, CovarianceState):
        return V.photon_phonon_block
    V = np.asarray(V, dtype=float)
    if V.shape not in ((4, 4), (6, 6)):
        raise DomainError(f"Expected a 4x4 or 6x6 covariance matrix, got {V.shape}")
    return V[:4, :4]


def variance_X(V) -> float:
    """Joint-quadrature variance (V11 + V33 + 2 V13) / 2"""

    V = _photon_phonon(V)
    return float(0.5 * (V[0, 0] + V[2, 2] + 2.0 * V[0, 2]))


def variance_Xphi(V, phi: float) -> float:
    V = _photon_phonon(V)
    c, s = math.cos(phi), math.sin(phi)
    return float(c * c * V[0, 0] + s * s * V[2, 2] + math.sin(2.0 * phi) * V[0, 2])


def variance_X_closed(g_eff: float, kappa_a: float, kappa_b: float, N_a: float, N_b: float, t):
    k = closed_form_constants(g_eff, kappa_a, kappa_b, N_a, N_b)
    e_plus, e_zero, e_minus = _exponentials(k, t)
    c, s = k.cos_varphi, k.sin_varphi
    return (1 + c) * k.C_plus * e_plus - s * k.C_zero * e_zero + (1 - c) * k.C_minus * e_minus + k.C_asym


def variance_X_rate(g_eff: float, kappa_a: float, kappa_b: float, N_a: float, N_b: float, t):
    """Time derivative of the closed-form joint variance"""

    k = closed_form_constants(g_eff, kappa_a, kappa_b, N_a, N_b)
    e_plus, e_zero, e_minus = _exponentials(k, t)
    c, s = k.cos_varphi, k.sin_varphi
    return (
        (1 + c) * k.C_plus * k.growth_rate * e_plus
        + s * k.C_zero * k.kappa_sum * e_zero
        - (1 - c) * k.C_minus * (k.Omega_rate + k.kappa_sum) * e_minus
    )


def _c_minus(g_eff: float, kappa_a: float, kappa_b: float, N_a: float, N_b: float) -> tuple[float, float]:
    Omega, _, sin_v, kappa_plus, kappa_minus = _rates(g_eff, kappa_a, kappa_b, N_a, N_b)
    kappa_sum = kappa_a + kappa_b
    return 0.25 - (kappa_plus + sin_v * kappa_minus) / (4.0 * (Omega + kappa_sum)), Omega + kappa_sum


def variance_Xphi_closed(g_eff: float, kappa_a: float, kappa_b: float, N_a: float, N_b: float, t):
    """Variance of the optimally rotated joint quadrature from vacuum"""

    C_minus, decay = _c_minus(g_eff, kappa_a, kappa_b, N_a, N_b)
    return 0.5 + 2.0 * C_minus * (np.exp(-decay * np.asarray(t, dtype=float)) - 1.0)


def variance_Xphi_asymptotic(g_eff: float, kappa_a: float, kappa_b: float, N_a: float, N_b: float) -> float:
    """Long-time limit of the optimally rotated joint-quadrature variance"""

    Omega, _, _, kappa_plus, kappa_minus = _rates(g_eff, kappa_a, kappa_b, N_a, N_b)
    if Omega == 0.0:
        raise SingularityError("Asymptotic variance is degenerate: g_eff = 0 with equal decay rates")
    return (Omega * kappa_plus + (kappa_a - kappa_b) * kappa_minus) / (2.0 * Omega * (Omega + kappa_a + kappa_b))


def stable_limit(kappa_a: float, kappa_b: float, N_a: float, N_b: float, g_eff: float) -> StableLimit:
    """Constant part of the joint variance and its minimum over g_eff.

    The minimum (N_a + N_b + 1) max(kappa_a, kappa_b) / (2 (kappa_a + kappa_b)) sits at
    g_eff = -min(kappa_a, kappa_b).
    """

    if kappa_a <= 0 or kappa_b <= 0:
        raise DomainError(f"Decay rates must be positive, got kappa_a={kappa_a}, kappa_b={kappa_b}")

    kappa_sum = kappa_a + kappa_b
    P = kappa_a * kappa_b - g_eff**2
    if abs(P) < SINGULAR_TOLERANCE:
        raise SingularityError("Joint-variance constant diverges at g_eff^2 = kappa_a kappa_b")

    N = N_a + N_b
    return StableLimit(
        C=0.5 * (N + 1.0) * kappa_a * kappa_b * (2.0 * g_eff + kappa_sum) / (P * kappa_sum),
        C_min=0.5 * (N + 1.0) * max(kappa_a, kappa_b) / kappa_sum,
        is_stable=g_eff**2 < kappa_a * kappa_b,
    )


def find_tau(g_eff: float, kappa_a: float, kappa_b: float, N_a: float, N_b: float) -> TauResult:
    """Time of the interior minimum of the joint variance in the unstable regime."""

    if g_eff**2 <= kappa_a * kappa_b:
        raise NotApplicableError(
            "The joint variance relaxes monotonically when g_eff^2 <= kappa_a kappa_b; "
            "use steady_state_cm for the stable regime"
        )

    def rate(t: float) -> float:
        return float(variance_X_rate(g_eff, kappa_a, kappa_b, N_a, N_b, t))

    if rate(0.0) >= 0:
        raise NotApplicableError("The joint variance does not decrease initially: no interior minimum")

    lo, hi = 0.0, 1.0
    for _ in range(MAX_BRACKET_DOUBLINGS):
        if rate(hi) > 0:
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise NotApplicableError("No sign change of the variance rate found")
    LOG.debug(f"Bracketed the variance minimum in [{lo:.6g}, {hi:.6g}]")

    tau = bisect(rate, lo, hi, xtol=TAU_TOLERANCE, rtol=TAU_TOLERANCE)
    return TauResult(tau=tau, delta_x=float(variance_X_closed(g_eff, kappa_a, kappa_b, N_a, N_b, tau)))


def simulate(
    model: LinearizedModel,
    times,
    kind: ModelKind = ModelKind.EFFECTIVE,
    g_eff: float | None = None,
    delta_a: float | None = None,
) -> Trajectory:
    """Vacuum-initial trajectory of the effective or full model.

    The effective trajectory carries the closed-form optimal angle; the full one carries the
    angle minimizing the joint variance of its last state.
    """

    if kind is ModelKind.EFFECTIVE:
        g_eff = g_eff_analytic(model) if g_eff is None else g_eff
        A = build_drift_effective(g_eff, model.kappa_a, model.kappa_b)
        V0 = vacuum_cm(2)
        phi, _ = optimal_angle(g_eff, model.kappa_a, model.kappa_b)
        return propagate(A, build_diffusion(kind, model), V0, times).with_angle(phi)

    A = build_drift_full(model, delta_a)
    V0 = vacuum_cm(3)
    trajectory = propagate(A, build_diffusion(kind, model), V0, times)
    return trajectory.with_angle(optimal_angle_from_cm(trajectory.final))

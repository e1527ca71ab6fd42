"""Mean-field steady state and Kerr linearization of the driven system."""

import cmath
import math

import numpy as np

from magnosqueeze.errors import DomainError, InfeasibleDriveError, LinearizationError
from magnosqueeze.logger import LOG
from magnosqueeze.models.params import LinearizedModel, SystemParams
from magnosqueeze.models.results import SteadyState

from .core import normalize


RESIDUAL_TOLERANCE = 1e-10
DEGENERACY_TOLERANCE = 1e-8
PHASE_TOLERANCE = 1e-8
NEWTON_STEPS = 4


def _effective_kerr(params: SystemParams) -> float:
    """Kerr coefficient including the static magnomechanical shift"""

    omega_b, kappa_b = params.omega_b, params.kappa_b
    return params.K_m + params.g_mb**2 * omega_b / (kappa_b**2 + omega_b**2)


def _depressed_cubic_roots(c3: float, c2: float, c1: float, c0: float) -> tuple[list[float], bool]:
    """Real roots of c3 x^3 + c2 x^2 + c1 x + c0 and a near-double-root flag."""

    p2, p1, p0 = c2 / c3, c1 / c3, c0 / c3
    shift = p2 / 3.0
    p = p1 - p2 * p2 / 3.0
    q = 2.0 * p2**3 / 27.0 - p2 * p1 / 3.0 + p0

    # negative discriminant: one real root; positive: three
    disc = -(4.0 * p**3 + 27.0 * q * q)
    scale = 4.0 * abs(p) ** 3 + 27.0 * q * q
    near_degenerate = scale > 0 and abs(disc) <= DEGENERACY_TOLERANCE * scale

    if disc > 0:
        radius = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * radius)
        base = math.acos(max(-1.0, min(1.0, arg))) / 3.0
        ys = [radius * math.cos(base - 2.0 * math.pi * k / 3.0) for k in range(3)]
    else:
        root = math.sqrt(max(q * q / 4.0 + p**3 / 27.0, 0.0))
        ys = [float(np.cbrt(-q / 2.0 + root) + np.cbrt(-q / 2.0 - root))]

    return [y - shift for y in ys], near_degenerate


def _polish(x: float, coeffs: tuple[float, float, float, float]) -> float:
    c3, c2, c1, c0 = coeffs
    for _ in range(NEWTON_STEPS):
        f = ((c3 * x + c2) * x + c1) * x + c0
        df = (3.0 * c3 * x + 2.0 * c2) * x + c1
        if df == 0.0:
            break
        x -= f / df
    return x


def solve_steady_state(params: SystemParams) -> SteadyState:
    """Steady amplitudes <a>, <m>, <b> of the driven, damped system.

    The squared modulus of the magnon equation gives a cubic in x = |<m>|^2. Every positive
    root is returned; the smallest one, which connects to <m> = 0 as the drive vanishes, is
    selected.
    """

    params = normalize(params)
    denom_a = complex(params.kappa_a, params.delta_a)
    if denom_a == 0:
        raise DomainError("Steady state needs kappa_a + |delta_a| > 0")
    denom_b = complex(params.kappa_b, params.omega_b)

    g, g_mb = params.g_ma, params.g_mb
    source = g * params.drive_rabi / denom_a
    self_energy = g * g / denom_a
    k_eff = _effective_kerr(params)

    if source == 0:
        a_ss = -1j * params.drive_rabi / denom_a
        return SteadyState(a_ss=a_ss, b_ss=0j, m_roots=[0j], selected=0, residuals=[0.0])

    alpha = -params.kappa_m - self_energy.real
    beta0 = -params.delta_m - self_energy.imag
    coeffs = (4.0 * k_eff**2, 4.0 * k_eff * beta0, alpha**2 + beta0**2, -abs(source) ** 2)

    near_degenerate = False
    if k_eff == 0.0:
        if coeffs[2] == 0.0:
            raise InfeasibleDriveError("Magnon response diverges: zero detuning and zero damping")
        xs = [-coeffs[3] / coeffs[2]]
    else:
        xs, near_degenerate = _depressed_cubic_roots(*coeffs)
        xs = [_polish(x, coeffs) for x in xs]

    xs = sorted(x for x in xs if x > 0 and math.isfinite(x))
    if not xs:
        raise InfeasibleDriveError("No positive real root for |<m>|^2")

    m_roots, residuals = [], []
    for x in xs:
        m = source / complex(alpha, beta0 + 2.0 * k_eff * x)
        a = -(1j * g * m + 1j * params.drive_rabi) / denom_a
        b = -1j * g_mb * abs(m) ** 2 / denom_b
        residual = (
            -complex(params.kappa_m, params.delta_m) * m
            - 1j * g * a
            + 2j * params.K_m * abs(m) ** 2 * m
            - 2j * g_mb * m * b.real
        )
        m_roots.append(m)
        residuals.append(abs(residual))

    bound = RESIDUAL_TOLERANCE * abs(source)
    for m, residual in zip(m_roots, residuals, strict=True):
        if residual > bound:
            raise LinearizationError(
                f"Steady-state root <m>={m:.6g} has residual {residual:.3e} above {bound:.3e}"
            )
    if near_degenerate:
        LOG.warning("Steady state is close to a bistability edge: two roots nearly coincide")

    m = m_roots[0]
    return SteadyState(
        a_ss=-(1j * g * m + 1j * params.drive_rabi) / denom_a,
        b_ss=-1j * g_mb * abs(m) ** 2 / denom_b,
        m_roots=m_roots,
        selected=0,
        residuals=residuals,
        near_degenerate=near_degenerate,
    )


def approx_magnon_amplitude(params: SystemParams) -> float:
    """Large-detuning estimate |<m>| ~ g_ma drive / |delta_m delta_a|"""

    if params.delta_a == 0 or params.delta_m == 0:
        raise DomainError("Magnon amplitude estimate needs nonzero photon and magnon detunings")
    return abs(params.g_ma * params.drive_rabi / (params.delta_m * params.delta_a))


def build_linearized(params: SystemParams, m_ss: complex) -> LinearizedModel:
    """Linearize around the magnon amplitude `m_ss`.

    The Kerr amplitude K = K_m <m>^2 shifts the magnon detuning by 2|K| and is removed by
    a Bogoliubov rotation with tanh(2r) = 2|K| / delta_m.
    """

    params = normalize(params)
    m_ss = complex(m_ss)
    if m_ss == 0 and (params.K_m != 0 or params.g_mb != 0):
        raise DomainError("Kerr and magnomechanical enhancement need a nonzero magnon amplitude")

    K = params.K_m * m_ss * m_ss
    abs_K = abs(K)
    delta_m = params.delta_m - 2.0 * abs_K

    r = 0.0
    theta = math.pi
    if abs_K > 0:
        if 2.0 * abs_K >= delta_m:
            raise LinearizationError(
                f"Kerr amplitude 2|K|={2.0 * abs_K:.6g} reaches the shifted magnon detuning {delta_m:.6g}"
            )
        r = 0.5 * math.atanh(2.0 * abs_K / delta_m)
        theta = cmath.phase(K)
        mismatch = math.remainder(theta - 2.0 * cmath.phase(m_ss), 2.0 * math.pi)
        if abs(mismatch) > PHASE_TOLERANCE:
            raise LinearizationError(
                f"Kerr phase {theta:.9f} is inconsistent with 2 arg<m> = {2.0 * cmath.phase(m_ss):.9f} "
                "(a negative Kerr coefficient flips the squeezing phase)"
            )

    return LinearizedModel.from_direct(
        delta_m=delta_m,
        r=r,
        delta_a=params.delta_a,
        omega_b=1.0,
        theta=theta,
        g=params.g_ma,
        G=params.g_mb * abs(m_ss),
        kappa_a=params.kappa_a,
        kappa_b=params.kappa_b,
        kappa_m=params.kappa_m,
        N_a=params.N_a,
        N_b=params.N_b,
        N_m=params.N_m,
        delta_m_bare=params.delta_m,
    )


def linearize(params: SystemParams) -> tuple[SteadyState, LinearizedModel]:
    """Steady state and linearized model around its selected root"""

    steady = solve_steady_state(params)
    return steady, build_linearized(params, steady.m_ss)

import math

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from magnosqueeze.errors import DomainError, InstabilityError, NotApplicableError, SingularityError
from magnosqueeze.models.results import ModelKind
from magnosqueeze.models.states import CovarianceState
from magnosqueeze.physics.core import vacuum_cm
from magnosqueeze.physics.dynamics import (
    build_diffusion,
    build_drift_effective,
    build_drift_full,
    closed_form_constants,
    closed_form_covariance,
    cm_closed_form,
    find_tau,
    optimal_angle,
    optimal_angle_from_cm,
    propagate,
    simulate,
    stable_limit,
    steady_state_cm,
    time_grid,
    variance_X,
    variance_X_closed,
    variance_X_rate,
    variance_Xphi,
    variance_Xphi_asymptotic,
    variance_Xphi_closed,
)
from magnosqueeze.physics.effective import g_eff_analytic


def lyapunov_reference(A, D, V0, times):
    """Dense ODE integration of V' = A V + V A^T + D"""

    n = A.shape[0]

    def rhs(_, v):
        V = v.reshape(n, n)
        return (A @ V + V @ A.T + D).ravel()

    span = (times[0], times[-1])
    solution = solve_ivp(rhs, span, V0.ravel(), method="DOP853", t_eval=times, rtol=1e-11, atol=1e-12)
    return solution.y.T.reshape(len(times), n, n)


def effective_matrices(g_eff, kappa_a, kappa_b, N_a, N_b):
    A = build_drift_effective(g_eff, kappa_a, kappa_b).A
    D = np.diag(np.repeat([kappa_a * (2 * N_a + 1), kappa_b * (2 * N_b + 1)], 2))
    return A, D


def test_effective_drift_structure():
    drift = build_drift_effective(-0.002, 1e-3, 1e-5)

    np.testing.assert_array_equal(np.diag(drift.A), [-1e-3, -1e-3, -1e-5, -1e-5])
    assert drift.A[0, 2] == drift.A[2, 0] == -0.002
    assert drift.A[1, 3] == drift.A[3, 1] == 0.002
    assert not drift.is_hurwitz
    assert build_drift_effective(-1e-6, 1e-3, 1e-5).is_hurwitz
    with pytest.raises(DomainError):
        build_drift_effective(0.0, -1e-3, 1e-5)


def test_full_drift_and_diffusion(fig4_model):
    drift = build_drift_full(fig4_model)
    diffusion = build_diffusion(ModelKind.FULL, fig4_model)

    assert drift.A.shape == (6, 6)
    assert drift.A[4, 4] == pytest.approx(-math.exp(0.5) * 1e-2)
    magnon = math.exp(0.5) * 1e-2
    np.testing.assert_allclose(np.diag(diffusion.D), [1e-3, 1e-3, 21e-5, 21e-5, magnon, magnon])
    assert build_diffusion(ModelKind.EFFECTIVE, fig4_model).D.shape == (4, 4)


def test_uncoupled_modes_thermalize():
    times = time_grid(2000.0, 21)
    A, D = effective_matrices(0.0, 1e-3, 1e-5, 0.0, 10.0)
    trajectory = propagate(A, D, vacuum_cm(2), times)

    np.testing.assert_allclose(trajectory.V11, 0.5, atol=1e-14)
    np.testing.assert_allclose(trajectory.V33, 10.5 - 10.0 * np.exp(-2e-5 * times), rtol=1e-12)
    np.testing.assert_allclose(trajectory.V13, 0.0, atol=1e-14)


def test_propagation_matches_ode_reference(random_rates):
    times = np.linspace(0.0, 300.0, 7)
    for _ in range(3):
        A, D = effective_matrices(*random_rates())
        trajectory = propagate(A, D, vacuum_cm(2), times)
        reference = lyapunov_reference(A, D, 0.5 * np.eye(4), times)

        for state, expected in zip(trajectory.states, reference, strict=True):
            np.testing.assert_allclose(state.V, expected, rtol=1e-8, atol=1e-9)


def test_full_propagation_matches_ode_reference(fig4_model):
    times = np.linspace(0.0, 50.0, 6)
    A = build_drift_full(fig4_model).A
    D = build_diffusion(ModelKind.FULL, fig4_model).D
    trajectory = propagate(A, D, vacuum_cm(3), times)
    reference = lyapunov_reference(A, D, 0.5 * np.eye(6), times)

    np.testing.assert_allclose(trajectory.final.V, reference[-1], rtol=1e-7, atol=1e-9)


def test_closed_form_matches_propagation(random_rates):
    times = np.linspace(0.0, 600.0, 61)
    for _ in range(20):
        rates = random_rates()
        trajectory = propagate(*effective_matrices(*rates), vacuum_cm(2), times)
        V11, V33, V13 = cm_closed_form(*rates, times)

        np.testing.assert_allclose(trajectory.V11, V11, rtol=1e-10, atol=1e-8)
        np.testing.assert_allclose(trajectory.V33, V33, rtol=1e-10, atol=1e-8)
        np.testing.assert_allclose(trajectory.V13, V13, rtol=1e-10, atol=1e-8)
        np.testing.assert_allclose(trajectory.dX, variance_X_closed(*rates, times), rtol=1e-10, atol=1e-8)


def test_closed_form_without_coupling_is_thermalization():
    times = np.linspace(0.0, 1000.0, 11)
    V11, V33, V13 = cm_closed_form(0.0, 1e-3, 1e-3, 1.0, 2.0, times)
    decay = np.exp(-2e-3 * times)

    np.testing.assert_allclose(V11, 1.5 - decay, rtol=1e-12)
    np.testing.assert_allclose(V33, 2.5 - 2.0 * decay, rtol=1e-12)
    np.testing.assert_allclose(V13, 0.0, atol=1e-14)


def test_closed_form_covariance_starts_in_vacuum(fig4_rates):
    state = closed_form_covariance(-5.5715e-3, *fig4_rates, 0.0)

    np.testing.assert_allclose(state.V, 0.5 * np.eye(4), atol=1e-12)
    assert closed_form_covariance(-5.5715e-3, *fig4_rates, 300.0).is_physical()


def test_closed_form_is_singular_at_threshold():
    with pytest.raises(SingularityError):
        closed_form_constants(1e-4, 1e-3, 1e-5, 0.0, 0.0)


def test_steady_state_matches_closed_form_limit():
    rates = (2e-6, 1e-3, 1e-5, 0.5, 10.0)
    A, D = effective_matrices(*rates)
    state = steady_state_cm(A, D)
    constants = closed_form_constants(*rates)

    assert state.t == math.inf
    np.testing.assert_allclose(A @ state.V + state.V @ A.T + D, 0.0, atol=1e-13)
    assert state.V[0, 0] == pytest.approx(constants.c_a, rel=1e-9)
    assert state.V[2, 2] == pytest.approx(constants.c_b, rel=1e-9)
    assert state.V[0, 2] == pytest.approx(constants.c, rel=1e-9)
    assert variance_X(state) == pytest.approx(constants.C_asym, rel=1e-9)


def test_steady_state_requires_hurwitz_drift(fig4_model, fig4_rates):
    A, D = effective_matrices(g_eff_analytic(fig4_model), *fig4_rates)

    with pytest.raises(InstabilityError) as excinfo:
        steady_state_cm(A, D)
    assert excinfo.value.spectral_abscissa > 0


def test_stable_limit():
    limit = stable_limit(1e-3, 1e-5, 0.0, 10.0, -1e-5)

    assert limit.is_stable
    assert limit.C_min == pytest.approx(0.5 * 11.0 * 1e-3 / 1.01e-3)
    assert limit.C == pytest.approx(limit.C_min, rel=1e-12)
    assert not stable_limit(1e-3, 1e-5, 0.0, 10.0, -5e-3).is_stable
    with pytest.raises(DomainError):
        stable_limit(0.0, 1e-5, 0.0, 10.0, -1e-5)


def test_stability_classification_follows_spectral_abscissa(rng):
    checked = 0
    while checked < 100:
        kappa_a = rng.uniform(1e-4, 2e-3)
        kappa_b = rng.uniform(1e-6, 1e-4)
        product = kappa_a * kappa_b
        g_eff = 2.0 * rng.uniform(-1.0, 1.0) * math.sqrt(product)
        if abs(g_eff**2 - product) < 1e-3 * product:
            continue

        drift = build_drift_effective(g_eff, kappa_a, kappa_b)
        limit = stable_limit(kappa_a, kappa_b, 0.0, 0.0, g_eff)

        assert limit.is_stable == (drift.spectral_abscissa < 0.0)
        assert limit.is_stable == drift.is_hurwitz
        assert limit.is_stable == (g_eff**2 < product)
        checked += 1


@pytest.mark.parametrize(
    ("g_eff", "kappa_a", "kappa_b", "expected"),
    [
        (0.0, 1e-3, 1e-3, (math.pi / 4, True)),
        (-1e-3, 1e-3, 1e-3, (math.pi / 4, False)),
        (1e-3, 1e-3, 1e-3, (-math.pi / 4, False)),
    ],
)
def test_optimal_angle_special_cases(g_eff, kappa_a, kappa_b, expected):
    phi, degenerate = optimal_angle(g_eff, kappa_a, kappa_b)

    assert phi == pytest.approx(expected[0])
    assert degenerate is expected[1]


def test_optimal_angle_satisfies_tangent_identity(rng):
    for _ in range(100):
        kappa_a = rng.uniform(1e-4, 2e-3)
        kappa_b = rng.uniform(1e-6, 1e-5)
        g_eff = rng.choice([-1.0, 1.0]) * rng.uniform(1e-4, 6e-3)
        phi, degenerate = optimal_angle(g_eff, kappa_a, kappa_b)

        assert not degenerate
        assert -math.pi / 2 < phi <= math.pi / 2
        assert math.tan(2.0 * phi) == pytest.approx(2.0 * g_eff / (kappa_b - kappa_a), rel=1e-12)


def test_optimal_angle_minimizes_long_time_variance(fig4_model, fig4_rates):
    g_eff = g_eff_analytic(fig4_model)
    phi, _ = optimal_angle(g_eff, *fig4_rates[:2])
    late = closed_form_covariance(g_eff, *fig4_rates, 2000.0)

    assert 0.0 < phi < math.pi / 4
    assert optimal_angle_from_cm(late) == pytest.approx(phi, abs=1e-3)

    state = closed_form_covariance(g_eff, *fig4_rates, 600.0)
    phi_cm = optimal_angle_from_cm(state)
    angles = np.linspace(-math.pi / 2, math.pi / 2, 721)
    assert variance_Xphi(state, phi_cm) <= min(variance_Xphi(state, a) for a in angles) + 1e-10


def test_rotated_variance_approaches_asymptote(fig4_model, fig4_rates):
    g_eff = g_eff_analytic(fig4_model)
    asymptote = variance_Xphi_asymptotic(g_eff, *fig4_rates)

    assert asymptote == pytest.approx(0.052468, rel=1e-4)
    assert variance_Xphi_closed(g_eff, *fig4_rates, 0.0) == pytest.approx(0.5)
    assert variance_Xphi_closed(g_eff, *fig4_rates, 1e4) == pytest.approx(asymptote, rel=1e-9)


def test_asymptote_is_singular_without_coupling():
    with pytest.raises(SingularityError):
        variance_Xphi_asymptotic(0.0, 1e-3, 1e-3, 0.0, 0.0)


def test_variance_minimum_time(fig4_model, fig4_rates):
    g_eff = g_eff_analytic(fig4_model)
    result = find_tau(g_eff, *fig4_rates)

    assert 275.0 <= result.tau <= 305.0
    assert variance_X_rate(g_eff, *fig4_rates, result.tau) == pytest.approx(0.0, abs=1e-12)
    assert result.delta_x < float(variance_X_closed(g_eff, *fig4_rates, 0.5 * result.tau))
    assert result.delta_x < float(variance_X_closed(g_eff, *fig4_rates, 1.5 * result.tau))


def test_variance_minimum_needs_unstable_regime(fig4_rates):
    with pytest.raises(NotApplicableError):
        find_tau(-1e-6, *fig4_rates)


def test_simulated_effective_trajectory_matches_closed_form(fig4_model, fig4_rates):
    times = time_grid(600.0, 61)
    trajectory = simulate(fig4_model, times)
    g_eff = g_eff_analytic(fig4_model)

    assert trajectory.phi == pytest.approx(optimal_angle(g_eff, *fig4_rates[:2])[0])
    np.testing.assert_allclose(trajectory.dX_phi, variance_Xphi_closed(g_eff, *fig4_rates, times), rtol=1e-9)


def test_propagate_accepts_later_start_state(fig4_model):
    A = build_drift_effective(-1e-3, 1e-3, 1e-5)
    D = build_diffusion(ModelKind.EFFECTIVE, fig4_model)
    direct = propagate(A, D, vacuum_cm(2), [0.0, 100.0, 200.0])
    resumed = propagate(A, D, CovarianceState(t=100.0, V=direct.states[1].V), [200.0])

    np.testing.assert_allclose(resumed.final.V, direct.final.V, rtol=1e-12)


def test_propagate_rejects_bad_input():
    A = build_drift_effective(-1e-3, 1e-3, 1e-5)
    D = np.diag([1e-3, 1e-3, 1e-5, 1e-5])
    asymmetric = 0.5 * np.eye(4)
    asymmetric[0, 1] = 0.1

    with pytest.raises(DomainError):
        propagate(A, D, asymmetric, [0.0, 1.0])
    with pytest.raises(DomainError):
        propagate(A, D, 0.5 * np.eye(6), [0.0, 1.0])
    with pytest.raises(DomainError):
        propagate(A, D, vacuum_cm(2), [0.0, 2.0, 1.0])
    with pytest.raises(DomainError):
        time_grid(-1.0, 10)

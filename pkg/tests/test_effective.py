import logging
import math

import pytest

from magnosqueeze.errors import DomainError, SingularityError
from magnosqueeze.models.params import LinearizedModel
from magnosqueeze.physics.effective import (
    cooperativity,
    delta_analytic,
    delta_consistency,
    effective_model,
    g_eff_analytic,
    perturbation_shifts,
    resonant_delta_a,
    validity_ratios,
)


def test_coupling_and_shift_without_kerr(fig2_model):
    assert g_eff_analytic(fig2_model) == pytest.approx(-0.0025, rel=1e-12)
    assert delta_analytic(fig2_model) == pytest.approx(0.01, rel=1e-12)
    assert resonant_delta_a(fig2_model) == pytest.approx(-0.99, rel=1e-12)


def test_kerr_squeezing_enhances_coupling(fig4_model):
    g_eff = g_eff_analytic(fig4_model)

    assert g_eff == pytest.approx(-5.5715e-3, rel=1e-4)
    assert delta_analytic(fig4_model) == pytest.approx(0.0177242, rel=1e-5)
    assert abs(g_eff) > abs(g_eff_analytic(fig4_model.with_updates(r=0.0)))


def test_coupling_is_bilinear_in_g_and_G(fig4_model):
    base = g_eff_analytic(fig4_model)

    assert g_eff_analytic(fig4_model.with_updates(g=0.2)) == pytest.approx(2.0 * base)
    assert g_eff_analytic(fig4_model.with_updates(G=0.3)) == pytest.approx(3.0 * base)
    assert g_eff_analytic(fig4_model.with_updates(G=0.0)) == 0.0


def test_resonant_magnon_detuning_is_singular():
    model = LinearizedModel.from_direct(delta_m=1.0, g=0.1, G=0.1)

    with pytest.raises(SingularityError):
        g_eff_analytic(model)
    with pytest.raises(SingularityError):
        delta_analytic(model)


def test_validity_ratios_in_large_detuning_regime(fig2_model):
    validity = validity_ratios(fig2_model, resonant_delta_a(fig2_model))

    assert validity.gap == pytest.approx(2.0)
    assert validity.max_ratio == pytest.approx(0.05)
    assert not validity.flagged


def test_small_detuning_is_flagged(caplog):
    model = LinearizedModel.from_direct(delta_m=0.5, r=0.5, g=0.2, G=0.2)

    with caplog.at_level(logging.WARNING, logger="magnosqueeze"):
        result = effective_model(model)

    assert result.validity.flagged
    assert result.validity.max_ratio == pytest.approx(0.2 * math.exp(0.5) / (1.0 - 0.5 / math.cosh(1.0)), rel=1e-9)
    assert "large-detuning" in caplog.text


def test_effective_model_uses_explicit_detuning(fig4_model):
    result = effective_model(fig4_model, delta_a=-1.0)

    assert result.delta_a == -1.0
    assert result.theta == math.pi
    assert result.g_eff == g_eff_analytic(fig4_model)


def test_cooperativity(fig4_model):
    g_eff = g_eff_analytic(fig4_model)

    assert cooperativity(g_eff, 1e-3, 1e-5) == pytest.approx(g_eff**2 / 1e-8)
    with pytest.raises(DomainError):
        cooperativity(g_eff, 0.0, 1e-5)


def test_perturbation_shifts_phonon_ladder(fig2_model):
    result = perturbation_shifts(fig2_model, -1.0, 2, 0, 3)

    assert result.g_eff == pytest.approx(-0.0025)
    assert abs(result.g_tilde) == pytest.approx(math.sqrt(12.0) * 0.0025)
    assert result.g_tilde.real == pytest.approx(0.0, abs=1e-15)


def test_perturbation_shifts_without_coupling():
    model = LinearizedModel.from_direct(delta_m=3.0, g=0.0, G=0.1)
    result = perturbation_shifts(model, -1.0, 0, 0, 0)

    assert result.g_eff == 0.0
    assert result.epsilon1 == pytest.approx(-0.01 / 4.0)
    assert result.epsilon2 == pytest.approx(0.01 / -2.0 - 2.0 * 0.01 / 4.0)


def test_perturbation_shifts_reject_bad_input(fig2_model):
    with pytest.raises(DomainError):
        perturbation_shifts(fig2_model, -1.0, -1, 0, 0)
    with pytest.raises(SingularityError):
        perturbation_shifts(fig2_model, 3.0, 0, 0, 0)


@pytest.mark.parametrize("r", [0.0, 0.1, 0.25, 0.4])
def test_second_order_shift_matches_closed_form(r):
    consistency = delta_consistency(LinearizedModel.from_direct(delta_m=3.0, r=r, g=0.1, G=0.1))

    assert consistency.identity_gap < 1e-14
    assert consistency.A == pytest.approx(consistency.delta_analytic, rel=1e-10)
    assert consistency.relative_gap <= abs(consistency.B) / abs(1.0 - consistency.B) + 1e-12


def test_resummation_correction_without_kerr(fig2_model):
    consistency = delta_consistency(fig2_model)

    assert consistency.B == pytest.approx(6.25e-4)
    assert consistency.delta_resummed == pytest.approx(0.01 / (1.0 - 6.25e-4))


def test_shift_difference_is_independent_of_fock_indices(rng):
    model = LinearizedModel.from_direct(delta_m=3.0, r=0.25, g=0.1, G=0.1)
    ground = perturbation_shifts(model, -1.0, 0, 0, 0)
    reference = ground.epsilon1 - ground.epsilon2

    for n, l, k in rng.integers(0, 20, size=(50, 3)):  # noqa: E741
        result = perturbation_shifts(model, -1.0, int(n), int(l), int(k))
        assert result.epsilon1 - result.epsilon2 == pytest.approx(reference, abs=1e-12)

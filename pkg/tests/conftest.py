import numpy as np
import pytest

from magnosqueeze.models.configs.presets import FIG2_PARAMS, FIG4_PARAMS
from magnosqueeze.models.params import LinearizedModel


@pytest.fixture
def fig4_model() -> LinearizedModel:
    return LinearizedModel.from_direct(**FIG4_PARAMS)


@pytest.fixture
def fig2_model() -> LinearizedModel:
    return LinearizedModel.from_direct(**FIG2_PARAMS)


@pytest.fixture
def fig4_rates(fig4_model) -> tuple[float, float, float, float]:
    """kappa_a, kappa_b, N_a, N_b of the dynamics preset"""

    return fig4_model.kappa_a, fig4_model.kappa_b, fig4_model.N_a, fig4_model.N_b


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def random_rates(rng):
    """Draws g_eff, kappa_a, kappa_b, N_a, N_b away from the g_eff^2 = kappa_a kappa_b singularity"""

    def draw() -> tuple[float, float, float, float, float]:
        while True:
            kappa_a = rng.uniform(1e-4, 2e-3)
            kappa_b = rng.uniform(1e-6, 1e-4)
            g_eff = rng.uniform(-6e-3, 6e-3)
            P = kappa_a * kappa_b
            if not 0.5 * P <= g_eff**2 <= 2.0 * P:
                return g_eff, kappa_a, kappa_b, rng.uniform(0.0, 2.0), rng.uniform(0.0, 20.0)

    return draw

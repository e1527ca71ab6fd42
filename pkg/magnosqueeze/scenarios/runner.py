"""Scenario computations behind the command line."""

import math
from typing import Any

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from magnosqueeze.errors import ConfigError, ExtractionError, MagnoSqueezeError, NotApplicableError
from magnosqueeze.logger import LOG
from magnosqueeze.models.configs import ScenarioName, SeriesSpec, SimulationConfig
from magnosqueeze.models.params import LinearizedModel
from magnosqueeze.models.results import ModelKind, SteadyState
from magnosqueeze.physics import core, dynamics, effective, entanglement, linearize, liouvillian

from .executor import error_kind, map_ordered
from .writers import PlotSpec


class ScenarioResult(BaseModel):
    """Tables, plots and summary values produced by one scenario run."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    tables: dict[str, pd.DataFrame] = Field(default_factory=dict)
    documents: dict[str, dict[str, Any]] = Field(default_factory=dict)
    plots: list[PlotSpec] = Field(default_factory=list)
    summary: dict[str, Any] = Field(default_factory=dict)


def resolve_model(config: SimulationConfig) -> tuple[LinearizedModel, SteadyState | None]:
    """Linearized model of a configuration and, for physical inputs, its steady state.

    A `system` block is linearized around its mean-field steady state; otherwise the `params`
    block is used directly. `absolute_units` supplies thermal occupations either way.
    """

    units = config.absolute_units
    if config.system is not None:
        system = config.system
        if units is not None:
            system = core.occupations_from_temperature(system, units.temperature)
        steady, model = linearize.linearize(system)
        return model, steady

    model = config.params
    if units is not None:
        model = model.with_updates(
            N_a=core.thermal_occupation(units.omega_a, units.temperature),
            N_m=core.thermal_occupation(units.omega_m, units.temperature),
            N_b=core.thermal_occupation(units.omega_b, units.temperature),
        )
    return model, None


async def run_spectrum(config: SimulationConfig, model: LinearizedModel, threads: int = 1) -> ScenarioResult:
    grid = config.scenario.grid.values
    spectrum = liouvillian.sweep(model, grid)

    columns: dict[str, np.ndarray] = {"delta_a": spectrum.grid}
    for k in range(spectrum.dim):
        columns[f"re_{k + 1}"] = spectrum.real_parts()[:, k]
    for k in range(spectrum.dim):
        columns[f"im_{k + 1}"] = spectrum.imag_parts()[:, k]

    summary: dict[str, Any] = {
        "pairing": [k + 1 for k in spectrum.pairing],
        "defections": spectrum.defections,
        "splitting_intervals": liouvillian.splitting_interval(spectrum),
    }
    try:
        extraction = liouvillian.extract_effective(spectrum)
        summary["extraction"] = extraction.model_dump() | {"delta_a_star": extraction.delta_a_star}
    except ExtractionError as e:
        LOG.warning(f"Spectrum has no splitting to extract: {e}")

    plots = [
        PlotSpec(
            name="spectrum_re",
            title="Real parts of the Liouvillian eigenvalues",
            x_label="delta_a / omega_b",
            y_label="Re E / omega_b",
            x=grid.tolist(),
            series={f"branch {k + 1}": spectrum.real_parts()[:, k].tolist() for k in range(spectrum.dim)},
        ),
        PlotSpec(
            name="spectrum_im",
            title="Imaginary parts of the paired eigenvalues",
            x_label="delta_a / omega_b",
            y_label="Im E / omega_b",
            x=grid.tolist(),
            series={f"branch {k + 1}": spectrum.imag_parts()[:, k].tolist() for k in spectrum.pairing},
        ),
    ]
    return ScenarioResult(tables={"spectrum.csv": pd.DataFrame(columns)}, plots=plots, summary=summary)


def _extraction_window(model: LinearizedModel, points: int) -> np.ndarray:
    """Detuning grid around the closed-form resonance, wide enough for a 20% shift error"""

    g_eff = abs(effective.g_eff_analytic(model))
    delta = effective.delta_analytic(model)
    half_width = 4.0 * g_eff + 0.5 * abs(delta)
    center = -model.omega_b + delta
    return np.linspace(center - half_width, center + half_width, points)


def _extract_point(model: LinearizedModel, points: int) -> dict[str, Any]:
    row: dict[str, Any] = {
        "g_eff_num": math.nan,
        "g_eff_analytic": math.nan,
        "delta_num": math.nan,
        "delta_analytic": math.nan,
        "status": "ok",
    }
    try:
        row["g_eff_analytic"] = effective.g_eff_analytic(model)
        row["delta_analytic"] = effective.delta_analytic(model)
        result = liouvillian.extract_effective(liouvillian.sweep(model, _extraction_window(model, points)))
        row["g_eff_num"] = result.g_eff_num
        row["delta_num"] = result.delta_num
    except (MagnoSqueezeError, ValueError) as e:
        row["status"] = error_kind(e)
        LOG.warning(f"Extraction failed at g={model.g}, G={model.G}, r={model.r}, delta_m={model.delta_m}: {e}")
    return row


async def run_extract(config: SimulationConfig, model: LinearizedModel, threads: int = 1) -> ScenarioResult:
    scenario = config.scenario
    axis = scenario.axes[0]
    series = scenario.series or SeriesSpec(name="r", values=[model.r])
    points = [(s, v) for s in series.values for v in axis.grid.values]

    def evaluate(point: tuple[float, float]) -> dict[str, Any]:
        s, v = point
        try:
            varied = model.with_updates(**{series.name: s, axis.name: float(v)})
        except ValueError as e:
            return {"status": error_kind(e)}
        return _extract_point(varied, scenario.window_points)

    rows = await map_ordered(evaluate, points, threads)
    table = pd.DataFrame(
        [{"axis": float(v), "series": s, **row} for (s, v), row in zip(points, rows, strict=True)],
        columns=["axis", "series", "g_eff_num", "g_eff_analytic", "delta_num", "delta_analytic", "status"],
    )
    if (table["status"] != "ok").all():
        raise ExtractionError(f"No level-attraction splitting found at any of the {len(points)} points")

    x = axis.grid.values.tolist()
    curves: dict[str, list[float]] = {}
    for s in series.values:
        part = table[table["series"] == s]
        curves[f"|g_eff| numeric, {series.name}={s:g}"] = part["g_eff_num"].abs().tolist()
        curves[f"|g_eff| analytic, {series.name}={s:g}"] = part["g_eff_analytic"].abs().tolist()

    plot = PlotSpec(
        name="extraction",
        title="Effective coupling from the level-attraction splitting",
        x_label=f"{axis.name} / omega_b",
        y_label="|g_eff| / omega_b",
        x=x,
        series=curves,
    )
    summary = {"axis": axis.name, "series": series.name, "failed": int((table["status"] != "ok").sum())}
    return ScenarioResult(tables={"extraction.csv": table}, plots=[plot], summary=summary)


def _variance_table(trajectory, times: np.ndarray) -> pd.DataFrame:
    dX_phi = trajectory.dX_phi
    return pd.DataFrame(
        {
            "t": times,
            "dX": trajectory.dX,
            "dX_phi": dX_phi,
            "S_db": [entanglement.squeezing_level_db(float(v)) for v in dX_phi],
            "E_N": entanglement.trajectory_logneg(trajectory),
        }
    )


async def run_dynamics(config: SimulationConfig, model: LinearizedModel, threads: int = 1) -> ScenarioResult:
    times = dynamics.time_grid(config.scenario.time.t_max, config.scenario.time.samples)
    eff = effective.effective_model(model)
    delta_a = liouvillian.resolve_delta_a(model)

    runs = await map_ordered(
        lambda kind: dynamics.simulate(model, times, kind, g_eff=eff.g_eff, delta_a=delta_a),
        [ModelKind.EFFECTIVE, ModelKind.FULL],
        threads,
    )
    effective_run, full_run = runs

    cm = pd.DataFrame(
        {
            "t": times,
            "V11": effective_run.V11,
            "V33": effective_run.V33,
            "V13": effective_run.V13,
            "V11_full": full_run.V11,
            "V33_full": full_run.V33,
            "V13_full": full_run.V13,
        }
    )

    rates = (eff.g_eff, model.kappa_a, model.kappa_b, model.N_a, model.N_b)
    summary: dict[str, Any] = {
        "g_eff": eff.g_eff,
        "delta": eff.delta,
        "delta_a": delta_a,
        "validity_max_ratio": eff.validity.max_ratio,
        "phi_effective": effective_run.phi,
        "phi_full": full_run.phi,
        "dX_phi_final": float(effective_run.dX_phi[-1]),
        "dX_phi_full_final": float(full_run.dX_phi[-1]),
        "cooperativity": effective.cooperativity(*rates[:3]),
    }
    try:
        summary["closed_form"] = dynamics.closed_form_constants(*rates).model_dump()
    except MagnoSqueezeError as e:
        LOG.warning(f"Closed-form constants unavailable: {e}")
    try:
        tau = dynamics.find_tau(*rates)
        asymptote = dynamics.variance_Xphi_asymptotic(*rates)
        summary |= {
            "tau": tau.tau,
            "dX_tau": tau.delta_x,
            "dX_phi_asymptotic": asymptote,
            "S_db_asymptotic": entanglement.squeezing_level_db(asymptote),
            "E_N_asymptotic": entanglement.logneg_asymptotic(*rates).E_N,
        }
    except NotApplicableError as e:
        LOG.info(f"No interior variance minimum: {e}")

    plots = [
        PlotSpec(
            name="cm_elements",
            title="Covariance matrix elements",
            x_label="omega_b t",
            y_label="V_ij",
            x=times.tolist(),
            series={column: cm[column].tolist() for column in cm.columns if column != "t"},
        ),
        PlotSpec(
            name="variances",
            title="Joint-quadrature variances",
            x_label="omega_b t",
            y_label="variance",
            x=times.tolist(),
            series={
                "dX effective": effective_run.dX.tolist(),
                "dX_phi effective": effective_run.dX_phi.tolist(),
                "dX full": full_run.dX.tolist(),
                "dX_phi full": full_run.dX_phi.tolist(),
            },
        ),
    ]
    tables = {
        "cm_elements.csv": cm,
        "variances.csv": _variance_table(effective_run, times),
        "variances_full.csv": _variance_table(full_run, times),
    }
    return ScenarioResult(tables=tables, plots=plots, summary=summary)


async def run_steady(config: SimulationConfig, model: LinearizedModel, threads: int = 1) -> ScenarioResult:
    g_eff = effective.g_eff_analytic(model)
    A = dynamics.build_drift_effective(g_eff, model.kappa_a, model.kappa_b)
    D = dynamics.build_diffusion(ModelKind.EFFECTIVE, model)
    state = dynamics.steady_state_cm(A, D)
    limit = dynamics.stable_limit(model.kappa_a, model.kappa_b, model.N_a, model.N_b, g_eff)

    dX = dynamics.variance_X(state)
    row = {
        "V11": state.V[0, 0],
        "V33": state.V[2, 2],
        "V13": state.V[0, 2],
        "dX": dX,
        "S_db": entanglement.squeezing_level_db(dX),
        "E_N": entanglement.logarithmic_negativity(state).E_N,
        "C": limit.C,
        "C_min": limit.C_min,
        "is_stable": limit.is_stable,
    }
    return ScenarioResult(tables={"steady.csv": pd.DataFrame([row])}, summary={"g_eff": g_eff})


async def run_linearize(
    config: SimulationConfig, model: LinearizedModel, threads: int = 1, steady: SteadyState | None = None
) -> ScenarioResult:
    if steady is None:
        raise ConfigError("The linearize scenario needs a steady state from a 'system' block")

    roots = pd.DataFrame(
        {
            "index": range(len(steady.m_roots)),
            "abs_m": [abs(m) for m in steady.m_roots],
            "re_m": [m.real for m in steady.m_roots],
            "im_m": [m.imag for m in steady.m_roots],
            "selected": [i == steady.selected for i in range(len(steady.m_roots))],
        }
    )
    summary = {
        "near_degenerate": steady.near_degenerate,
        "residuals": list(steady.residuals),
        "a_ss": [steady.a_ss.real, steady.a_ss.imag],
        "b_ss": [steady.b_ss.real, steady.b_ss.imag],
    }
    return ScenarioResult(
        tables={"roots.csv": roots},
        documents={"linearized.json": model.model_dump(mode="json")},
        summary=summary,
    )


def entanglement_at_point(model: LinearizedModel, kind: ModelKind = ModelKind.FULL) -> float:
    """Long-time E_N of one parameter point.

    The full model is propagated to 2 tau, with tau the variance minimum of the effective
    model; the effective model uses its closed-form asymptote. Both use -|g_eff|, since the
    sign only selects which joint quadrature is squeezed.
    """

    g_eff = -abs(effective.g_eff_analytic(model))
    rates = (g_eff, model.kappa_a, model.kappa_b, model.N_a, model.N_b)
    if kind is ModelKind.EFFECTIVE:
        return entanglement.logneg_asymptotic(*rates).E_N

    tau = dynamics.find_tau(*rates).tau
    trajectory = dynamics.simulate(model, [2.0 * tau], ModelKind.FULL)
    return entanglement.logarithmic_negativity(trajectory.final).E_N


async def run_sweep2d(config: SimulationConfig, model: LinearizedModel, threads: int = 1) -> ScenarioResult:
    scenario = config.scenario
    first, second = scenario.axes
    points = [(float(u), float(v)) for u in first.grid.values for v in second.grid.values]

    def evaluate(point: tuple[float, float]) -> tuple[float, str]:
        u, v = point
        try:
            varied = model.with_updates(**{first.name: u, second.name: v})
            return entanglement_at_point(varied, scenario.model), "ok"
        except (MagnoSqueezeError, ValueError) as e:
            LOG.debug(f"Sweep point {first.name}={u:.6g}, {second.name}={v:.6g} failed: {e}")
            return math.nan, error_kind(e)

    results = await map_ordered(evaluate, points, threads)
    table = pd.DataFrame(
        [
            {"axis1": u, "axis2": v, "E_N": e_n, "status": status}
            for (u, v), (e_n, status) in zip(points, results, strict=True)
        ]
    )
    failed = int((table["status"] != "ok").sum())
    if failed:
        LOG.warning(f"{failed} of {len(points)} sweep points failed and are recorded as NaN")

    plot = PlotSpec(
        name="sweep",
        title=f"Logarithmic negativity ({scenario.model.value} model)",
        x_label=f"{first.name} / omega_b" if first.name != "r" else "r",
        y_label="E_N",
        x=first.grid.values.tolist(),
        series={
            f"{second.name}={v:.4g}": table[table["axis2"] == v]["E_N"].tolist() for v in second.grid.values.tolist()
        },
    )
    summary = {
        "axes": [first.name, second.name],
        "failed": failed,
        "E_N_max": float(table["E_N"].max()) if failed < len(points) else None,
    }
    return ScenarioResult(tables={"sweep.csv": table}, plots=[plot], summary=summary)


SCENARIOS = {
    ScenarioName.SPECTRUM: run_spectrum,
    ScenarioName.EXTRACT: run_extract,
    ScenarioName.DYNAMICS: run_dynamics,
    ScenarioName.SWEEP2D: run_sweep2d,
    ScenarioName.STEADY: run_steady,
}

import json

import pandas as pd
import pytest
from click.testing import CliRunner

from magnosqueeze import __version__
from magnosqueeze.main import main
from magnosqueeze.models.configs.presets import FIG4_PARAMS


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def write_config(tmp_path, payload) -> str:
    path = tmp_path / "config.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def sweep_config(tmp_path, model: str = "full") -> str:
    axes = [
        {"name": "g", "grid": {"min": 0.05, "max": 0.1, "count": 2}},
        {"name": "G", "grid": {"min": 0.05, "max": 0.1, "count": 2}},
    ]
    scenario = {"name": "sweep2d", "axes": axes, "model": model}
    return write_config(tmp_path, {"scenario": scenario, "params": FIG4_PARAMS})


def test_fig4_dynamics_run(runner, tmp_path):
    out = tmp_path / "out"
    result = runner.invoke(main, ["--preset", "fig4", "--out", str(out)])

    assert result.exit_code == 0
    assert {"cm_elements.csv", "variances.csv", "variances_full.csv", "manifest.json"} <= {
        p.name for p in out.iterdir()
    }

    variances = pd.read_csv(out / "variances.csv")
    assert list(variances.columns) == ["t", "dX", "dX_phi", "S_db", "E_N"]
    assert len(variances) == 601
    assert variances["dX_phi"].iloc[-1] == pytest.approx(0.052, abs=2e-3)

    cm = pd.read_csv(out / "cm_elements.csv")
    assert list(cm.columns) == ["t", "V11", "V33", "V13", "V11_full", "V33_full", "V13_full"]

    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["version"] == __version__
    assert manifest["scenario"] == "dynamics"
    assert manifest["preset"] == "fig4"
    assert manifest["parameters"]["r"] == 0.25
    assert 275.0 <= manifest["summary"]["tau"] <= 305.0
    assert "manifest.json" in manifest["artifacts"]


def test_svg_plots_are_written(runner, tmp_path):
    out = tmp_path / "out"
    result = runner.invoke(main, ["dynamics", "--preset", "fig4", "--out", str(out), "--svg"])

    assert result.exit_code == 0
    titles = {"cm_elements.svg": "Covariance matrix elements", "variances.svg": "Joint-quadrature variances"}
    for name, title in titles.items():
        text = (out / name).read_text()
        assert text.startswith("<?xml")
        assert "<svg" in text
        assert "<path" in text
        assert title in text


def test_svg_plots_are_reproducible(runner, tmp_path):
    for name in ("one", "two"):
        result = runner.invoke(main, ["dynamics", "--preset", "fig4", "--out", str(tmp_path / name), "--svg"])
        assert result.exit_code == 0

    first = (tmp_path / "one" / "variances.svg").read_bytes()
    assert first == (tmp_path / "two" / "variances.svg").read_bytes()


def test_spectrum_run(runner, tmp_path):
    out = tmp_path / "out"
    config = write_config(
        tmp_path,
        {
            "scenario": {"name": "spectrum", "grid": {"min": -1.02, "max": -0.98, "count": 201}},
            "params": {"delta_m": 3.0, "g": 0.1, "G": 0.1},
        },
    )
    result = runner.invoke(main, ["--config", config, "--out", str(out)])

    assert result.exit_code == 0
    spectrum = pd.read_csv(out / "spectrum.csv")
    assert list(spectrum.columns) == ["delta_a"] + [f"re_{k}" for k in range(1, 7)] + [f"im_{k}" for k in range(1, 7)]
    assert len(spectrum) == 201
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["summary"]["extraction"]["g_eff_num"] == pytest.approx(-0.0025, rel=0.05)


def test_extract_run(runner, tmp_path):
    out = tmp_path / "out"
    config = write_config(
        tmp_path,
        {
            "scenario": {
                "name": "extract",
                "axes": [{"name": "g", "grid": {"min": 0.05, "max": 0.1, "count": 3}}],
                "series": {"name": "r", "values": [0.0]},
                "window_points": 401,
            },
            "params": {"delta_m": 3.0, "G": 0.1},
        },
    )
    result = runner.invoke(main, ["--config", config, "--out", str(out), "--threads", "2"])

    assert result.exit_code == 0
    table = pd.read_csv(out / "extraction.csv")
    assert list(table.columns) == [
        "axis",
        "series",
        "g_eff_num",
        "g_eff_analytic",
        "delta_num",
        "delta_analytic",
        "status",
    ]
    assert (table["status"] == "ok").all()
    assert (abs(table["g_eff_num"] / table["g_eff_analytic"] - 1.0) < 0.05).all()


def test_extraction_without_splitting_exits_4(runner, tmp_path):
    out = tmp_path / "out"
    config = write_config(
        tmp_path,
        {
            "scenario": {"name": "extract", "axes": [{"name": "G", "grid": {"min": 0.0, "max": 0.0, "count": 1}}]},
            "params": {"delta_m": 3.0, "g": 0.1},
        },
    )
    result = runner.invoke(main, ["--config", config, "--out", str(out)])

    assert result.exit_code == 4
    assert not out.exists()


def test_sweep_is_independent_of_thread_count(runner, tmp_path):
    config = sweep_config(tmp_path)
    first = runner.invoke(main, ["--config", config, "--out", str(tmp_path / "one")])
    second = runner.invoke(main, ["--config", config, "--out", str(tmp_path / "three"), "--threads", "3"])

    assert first.exit_code == second.exit_code == 0
    sequential = (tmp_path / "one" / "sweep.csv").read_text()
    assert sequential == (tmp_path / "three" / "sweep.csv").read_text()

    table = pd.read_csv(tmp_path / "one" / "sweep.csv")
    assert list(table.columns) == ["axis1", "axis2", "E_N", "status"]
    assert len(table) == 4
    assert (table["status"] == "ok").all()
    assert (table["E_N"] > 0).all()


def test_steady_run(runner, tmp_path):
    out = tmp_path / "out"
    result = runner.invoke(
        main,
        ["steady", "--preset", "fig4", "--param", "g=0.001", "--param", "G=0.001", "--out", str(out)],
    )

    assert result.exit_code == 0
    steady = pd.read_csv(out / "steady.csv")
    assert list(steady.columns) == ["V11", "V33", "V13", "dX", "S_db", "E_N", "C", "C_min", "is_stable"]
    assert bool(steady["is_stable"].iloc[0])


def test_unstable_steady_state_exits_3(runner, tmp_path):
    out = tmp_path / "out"
    result = runner.invoke(main, ["steady", "--preset", "fig4", "--out", str(out)])

    assert result.exit_code == 3
    assert not out.exists()


def test_linearize_run(runner, tmp_path):
    out = tmp_path / "out"
    system = {
        "omega_a": -1.0,
        "omega_m": 3.0,
        "omega_b": 1.0,
        "omega_d": 0.0,
        "g_ma": 0.1,
        "drive_rabi": 1.0,
        "K_m": 150.0,
        "g_mb": 1e-3,
        "kappa_a": 1e-3,
        "kappa_m": 1e-2,
        "kappa_b": 1e-5,
        "normalized": True,
    }
    config = write_config(tmp_path, {"scenario": {"name": "linearize"}, "system": system})
    result = runner.invoke(main, ["--config", config, "--out", str(out)])

    assert result.exit_code == 0
    roots = pd.read_csv(out / "roots.csv")
    assert list(roots.columns) == ["index", "abs_m", "re_m", "im_m", "selected"]
    assert len(roots) == 3
    assert roots["selected"].tolist() == [True, False, False]
    linearized = json.loads((out / "linearized.json").read_text())
    assert linearized["r"] > 0.0


@pytest.mark.parametrize(
    "args",
    [
        [],
        ["--preset", "fig9"],
        ["steady", "--preset", "fig4", "--param", "g"],
        ["steady", "--preset", "fig4", "--param", "g=abc"],
    ],
)
def test_configuration_errors_exit_2(runner, tmp_path, args):
    out = tmp_path / "out"
    result = runner.invoke(main, [*args, "--out", str(out)])

    assert result.exit_code == 2
    assert not out.exists()


def test_malformed_config_file_exits_2(runner, tmp_path):
    out = tmp_path / "out"
    path = tmp_path / "broken.json"
    path.write_text("{", encoding="utf-8")
    result = runner.invoke(main, ["--config", str(path), "--out", str(out)])

    assert result.exit_code == 2
    assert not out.exists()


def test_output_directory_from_environment(tmp_path):
    out = tmp_path / "env-out"
    result = CliRunner(env={"SIMULATE_OUT": str(out)}).invoke(main, ["--config", sweep_config(tmp_path, "effective")])

    assert result.exit_code == 0
    assert (out / "sweep.csv").exists()

"""Main orchestrator for magnosqueeze simulations."""

import asyncio
import os
import sys
from pathlib import Path
from typing import Any

import click

from magnosqueeze import __version__
from magnosqueeze.errors import ConfigError, MagnoSqueezeError
from magnosqueeze.logger import LOG
from magnosqueeze.models.configs import PRESET_NAMES, ScenarioName, SimulationConfig, load_config
from magnosqueeze.models.params import LinearizedModel
from magnosqueeze.models.results import SteadyState
from magnosqueeze.scenarios import SCENARIOS, ArtifactWriter, ScenarioResult, resolve_model, run_linearize


class SimulationOrchestrator:
    """Runs one scenario end to end and leaves either all artifacts or none."""

    def __init__(
        self,
        scenario: str | None = None,
        preset_name: str | None = None,
        config_path: Path | None = None,
        out_dir: Path = Path("out"),
        threads: int = 1,
        svg: bool = False,
        params: dict[str, Any] | None = None,
    ):
        self.scenario = scenario
        self.preset_name = preset_name
        self.config_path = config_path
        self.threads = threads
        self.svg = svg
        self.params = params or {}
        self.writer = ArtifactWriter(out_dir)

        self.config: SimulationConfig | None = None
        self.model: LinearizedModel | None = None
        self.steady: SteadyState | None = None
        self.result: ScenarioResult | None = None

    async def phase_1_resolve_config(self) -> None:
        """Phase 1: Merge preset, config file and command-line values."""

        LOG.info("Phase 1: Resolving configuration...")

        try:
            self.config = load_config(
                scenario=self.scenario,
                preset_name=self.preset_name,
                config_path=self.config_path,
                params=self.params,
            )
            LOG.info(f"Scenario '{self.config.scenario.name.value}' (preset: {self.config.scenario.preset})")

            LOG.success("Phase 1 completed")

        except Exception as e:
            LOG.error(f"Configuration failed: {e}")
            raise

    async def phase_2_build_model(self) -> None:
        """Phase 2: Build the linearized model."""

        LOG.info("Phase 2: Building the linearized model...")

        try:
            self.model, self.steady = resolve_model(self.config)
            LOG.info(
                f"delta_m={self.model.delta_m:.6g}, r={self.model.r:.6g}, g={self.model.g:.6g}, G={self.model.G:.6g}"
            )

            LOG.success("Phase 2 completed")

        except Exception as e:
            LOG.error(f"Model construction failed: {e}")
            raise

    async def phase_3_run_scenario(self) -> None:
        """Phase 3: Run the scenario computation."""

        name = self.config.scenario.name
        LOG.info(f"Phase 3: Running {name.value}...")

        try:
            if name is ScenarioName.LINEARIZE:
                self.result = await run_linearize(self.config, self.model, self.threads, steady=self.steady)
            else:
                self.result = await SCENARIOS[name](self.config, self.model, self.threads)

            LOG.success("Phase 3 completed")

        except Exception as e:
            LOG.error(f"Scenario {name.value} failed: {e}")
            raise

    def manifest(self) -> dict[str, Any]:
        scenario = self.config.scenario
        return {
            "version": __version__,
            "scenario": scenario.name.value,
            "preset": scenario.preset,
            "parameters": self.model.model_dump(mode="json"),
            "system": self.config.system.model_dump(mode="json") if self.config.system else None,
            "absolute_units": (
                self.config.absolute_units.model_dump(mode="json") if self.config.absolute_units else None
            ),
            "grids": scenario.model_dump(mode="json", by_alias=True, exclude={"name", "preset"}),
            "axes": [axis.name for axis in scenario.axes],
            "threads": self.threads,
            "summary": self.result.summary,
            "artifacts": [*self.writer.artifact_names, "manifest.json"],
        }

    async def phase_4_write_artifacts(self) -> None:
        """Phase 4: Write artifacts and the manifest."""

        LOG.info(f"Phase 4: Writing artifacts to {self.writer.out_dir}...")

        try:
            for name, table in self.result.tables.items():
                self.writer.write_csv(name, table)
            for name, document in self.result.documents.items():
                self.writer.write_json(name, document)
            if self.svg:
                for plot in self.result.plots:
                    self.writer.write_svg(plot)
            self.writer.write_json("manifest.json", self.manifest())

            LOG.success("Phase 4 completed")

        except Exception as e:
            LOG.error(f"Writing artifacts failed: {e}")
            raise

    async def run(self) -> list[str]:
        """Drive the four phases; partial artifacts are removed on any failure"""

        try:
            with LOG.phase("config"):
                await self.phase_1_resolve_config()
            with LOG.phase("model"):
                await self.phase_2_build_model()
            with LOG.phase(self.config.scenario.name.value):
                await self.phase_3_run_scenario()
            with LOG.phase("artifacts"):
                await self.phase_4_write_artifacts()

        except Exception:
            self.writer.cleanup()
            raise

        return self.writer.artifact_names


def parse_params(values: tuple[str, ...]) -> dict[str, float]:
    """Parse repeated NAME=VALUE overrides"""

    params = {}
    for item in values:
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise ConfigError(f"Parameter override '{item}' must look like NAME=VALUE")
        try:
            params[name.strip()] = float(value)
        except ValueError:
            raise ConfigError(f"Parameter override '{item}' needs a numeric value")
    return params


@click.command()
@click.argument("scenario", required=False, type=click.Choice([s.value for s in ScenarioName]))
@click.option("--preset", "preset_name", help=f"Named parameter set: {', '.join(PRESET_NAMES)}")
@click.option(
    "--config",
    "config_path",
    type=click.Path(path_type=Path, dir_okay=False),
    help="JSON configuration file",
)
@click.option(
    "--out",
    "out_dir",
    default=lambda: os.environ.get("SIMULATE_OUT", "./out"),
    type=click.Path(path_type=Path, file_okay=False),
    help="Output directory",
)
@click.option(
    "--threads",
    default=lambda: int(os.environ.get("SIMULATE_THREADS", "1")),
    type=click.IntRange(min=1),
    help="Worker threads for parameter sweeps",
)
@click.option("--svg", is_flag=True, help="Also write SVG line plots")
@click.option("--param", "param_items", multiple=True, metavar="NAME=VALUE", help="Override a model parameter")
@click.option("--verbose", "-v", is_flag=True, help="Log per-step numerical diagnostics (DEBUG level)")
def main(
    scenario: str | None,
    preset_name: str | None,
    config_path: Path | None,
    out_dir: Path,
    threads: int,
    svg: bool,
    param_items: tuple[str, ...],
    verbose: bool,
) -> None:
    """Simulate magnon-mediated photon-phonon squeezing and entanglement."""

    LOG.set_level("DEBUG" if verbose else os.environ.get("LOG_LEVEL", "INFO"))

    try:
        orchestrator = SimulationOrchestrator(
            scenario=scenario,
            preset_name=preset_name,
            config_path=config_path,
            out_dir=out_dir,
            threads=threads,
            svg=svg,
            params=parse_params(param_items),
        )
        artifacts = asyncio.run(orchestrator.run())
        LOG.success(f"Wrote {len(artifacts)} artifacts to {out_dir}")

    except KeyboardInterrupt:
        LOG.info("Received interrupt signal")
        sys.exit(130)
    except MagnoSqueezeError as e:
        LOG.error(f"Simulation failed: {e}")
        sys.exit(e.exit_code)
    except Exception as e:
        LOG.error(f"Unexpected failure: {e}")
        sys.exit(1)


if __name__ == "__main__":
    main()

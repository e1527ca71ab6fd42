"""Deterministic CSV, JSON and SVG artifact writing."""

import json
from pathlib import Path
from typing import Any

import matplotlib
import numpy as np
import pandas as pd
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure
from pydantic import BaseModel, ConfigDict, Field

from magnosqueeze.logger import LOG


FLOAT_FORMAT = "%.17g"

# text as <text> elements and salted ids keep reruns byte-identical
PLOT_STYLE = {
    "figure.figsize": (6.4, 4.0),
    "axes.labelsize": 10,
    "axes.titlesize": 11,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "lines.linewidth": 1.2,
    "svg.fonttype": "none",
    "svg.hashsalt": "magnosqueeze",
}


class PlotSpec(BaseModel):
    """One static line plot: a shared x axis and named y series."""

    model_config = ConfigDict(frozen=True)

    name: str = Field(pattern=r"^[a-zA-Z0-9_-]+$")
    title: str
    x_label: str
    y_label: str
    x: list[float]
    series: dict[str, list[float]]


def render_plot(plot: PlotSpec, path: Path) -> None:
    """Draw a plot and save it as SVG; non-finite samples break the lines."""

    with matplotlib.rc_context(PLOT_STYLE):
        fig = Figure()
        FigureCanvasAgg(fig)
        ax = fig.add_subplot()
        x = np.asarray(plot.x, dtype=float)
        for label, values in plot.series.items():
            y = np.asarray(values, dtype=float)
            ax.plot(x, np.where(np.isfinite(y), y, np.nan), label=label)

        ax.set_title(plot.title)
        ax.set_xlabel(plot.x_label)
        ax.set_ylabel(plot.y_label)
        if plot.series:
            ax.legend(frameon=False)
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})


class ArtifactWriter:
    """Writes run artifacts into one directory and removes them again on failure."""

    def __init__(self, out_dir: Path):
        self.out_dir = Path(out_dir)
        self.written: list[Path] = []
        self._created_dir = False

    def _prepare(self, name: str) -> Path:
        if not self.out_dir.exists():
            self.out_dir.mkdir(parents=True)
            self._created_dir = True
        path = self.out_dir / name
        self.written.append(path)
        return path

    def write_csv(self, name: str, table: pd.DataFrame) -> Path:
        path = self._prepare(name)
        table.to_csv(path, index=False, float_format=FLOAT_FORMAT, na_rep="nan", lineterminator="\n")
        LOG.debug(f"Wrote {path} ({len(table)} rows)")
        return path

    def write_json(self, name: str, payload: dict[str, Any]) -> Path:
        path = self._prepare(name)
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        LOG.debug(f"Wrote {path}")
        return path

    def write_svg(self, plot: PlotSpec) -> Path:
        path = self._prepare(f"{plot.name}.svg")
        render_plot(plot, path)
        LOG.debug(f"Wrote {path}")
        return path

    @property
    def artifact_names(self) -> list[str]:
        return [path.name for path in self.written]

    def cleanup(self) -> None:
        """Remove every file written so far, and the directory if this writer created it"""

        for path in self.written:
            try:
                path.unlink(missing_ok=True)
            except OSError as e:
                LOG.warning(f"Could not remove partial artifact {path}: {e}")
        self.written.clear()

        if self._created_dir:
            try:
                self.out_dir.rmdir()
            except OSError:
                LOG.debug(f"Keeping non-empty output directory {self.out_dir}")

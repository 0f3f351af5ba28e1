"""SVG line charts rendered from CSV columns.

Output is byte-stable: the SVG id salt is fixed and no date is embedded.
"""
from __future__ import annotations

import csv
import os
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


class PlotError(ValueError):
    pass


@dataclass
class PlotSpec:
    x: str
    y: list[str]
    title: str = ""
    where: dict = field(default_factory=dict)  # column -> required string value
    logx: bool = False
    logy: bool = False
    marker_x: float | None = None
    marker_label: str = ""
    scatter: bool = False


def _read(csv_path: str, spec: PlotSpec):
    with open(csv_path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        rows = list(reader)
    if not rows:
        raise PlotError(f"{csv_path} has no data rows")
    needed = [spec.x, *spec.y, *spec.where]
    missing = [c for c in needed if c not in header]
    if missing:
        raise PlotError(f"{csv_path} lacks column(s): {', '.join(missing)}")
    rows = [r for r in rows if all(r[c] == str(v) for c, v in spec.where.items())]
    if not rows:
        raise PlotError(f"no rows of {csv_path} match the filter {spec.where}")
    return rows


def emit_plot(csv_path: str, spec: PlotSpec, out_path: str) -> str:
    """Render ``spec`` from ``csv_path`` into ``out_path`` (SVG).  Nothing is written on error."""
    rows = _read(csv_path, spec)
    xs = [float(r[spec.x]) for r in rows]
    plt.rcParams["svg.hashsalt"] = "desc-entropy"
    plt.rcParams["svg.fonttype"] = "none"
    fig, ax = plt.subplots(figsize=(6, 4))
    try:
        for col in spec.y:
            ys = [float(r[col]) if r[col] != "" else float("nan") for r in rows]
            if spec.scatter:
                ax.scatter(xs, ys, s=12, label=col)
            else:
                ax.plot(xs, ys, marker="o", markersize=3, label=col)
        if spec.marker_x is not None:
            ax.axvline(spec.marker_x, color="grey", linestyle="--", label=spec.marker_label or None)
        if spec.logx:
            ax.set_xscale("log")
        if spec.logy:
            ax.set_yscale("log")
        ax.set_xlabel(spec.x)
        ax.set_title(spec.title)
        ax.legend()
        fig.tight_layout()
        os.makedirs(os.path.dirname(os.path.abspath(out_path)), exist_ok=True)
        fig.savefig(out_path, format="svg", metadata={"Date": None})
    finally:
        plt.close(fig)
    return out_path

"""SVG line charts rendered from exported CSV files.

Output is byte-stable: the SVG hash salt is fixed, the date stamp is
dropped and text is kept as text rather than glyph paths.
"""

from __future__ import annotations

import io
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .export import read_csv, write_atomic  # noqa: E402

STYLE = {
    "svg.hashsalt": "bumpforge",
    "svg.fonttype": "none",
    "font.size": 9,
    "axes.labelsize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "lines.linewidth": 1.2,
    "figure.figsize": (5.0, 3.4),
}

PROFILE_HEADER = ["r", "f", "f_prime"]


class PlotInputError(ValueError):
    pass


def _load(path):
    path = Path(path)
    if not path.is_file():
        raise PlotInputError(f"{path}: no such file")
    rows = read_csv(path)
    if not rows:
        raise PlotInputError(f"{path}: no data rows")
    return rows


def _render(fig) -> str:
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buf.getvalue()


def profile_figure(series, title=None) -> str:
    """One polyline per (label, r, f) triple."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        for label, r, f in series:
            ax.plot(r, f, label=label)
        ax.axhline(0.0, color="0.6", linewidth=0.6)
        ax.set_xlabel("r")
        ax.set_ylabel("f(r)")
        if title:
            ax.set_title(title)
        ax.legend(frameon=False)
        fig.tight_layout()
        return _render(fig)


def sweep_figure(rows, column="gamma", log=False, title=None) -> str:
    """``column`` against d, one line per scheme."""
    schemes = sorted({r["scheme"] for r in rows})
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        for sch in schemes:
            sub = sorted((int(r["d"]), float(r[column])) for r in rows if r["scheme"] == sch)
            d, y = np.array(sub).T
            ax.plot(d, y, marker="o", markersize=2.5, label=sch)
        if log:
            ax.set_xscale("log")
            ax.set_yscale("log")
        ax.set_xlabel("d")
        ax.set_ylabel(column)
        if title:
            ax.set_title(title)
        ax.legend(frameon=False)
        fig.tight_layout()
        return _render(fig)


def plot_files(inputs, out, log=False, column="gamma") -> Path:
    """Render profile CSVs (overlayed) or a sweep CSV into one SVG at ``out``."""
    loaded = [(Path(p), _load(p)) for p in inputs]
    if not loaded:
        raise PlotInputError("no input files")
    kinds = {"profile" if list(rows[0]) == PROFILE_HEADER else "sweep" for _, rows in loaded}
    if len(kinds) > 1:
        raise PlotInputError("cannot mix profile and sweep CSVs in one chart")
    if kinds == {"profile"}:
        series = []
        for path, rows in loaded:
            r = np.array([float(x["r"]) for x in rows])
            f = np.array([float(x["f"]) for x in rows])
            series.append((path.stem, r, f))
        svg = profile_figure(series)
    else:
        rows = [row for _, rs in loaded for row in rs]
        if column not in rows[0]:
            raise PlotInputError(f"column {column!r} not in sweep CSV")
        svg = sweep_figure(rows, column=column, log=log)
    return write_atomic(out, svg)

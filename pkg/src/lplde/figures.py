"""Optional rendering of result tables to PNG files.

The CSV output is the primary artifact; these helpers draw the same columns
with matplotlib (Agg backend, no display needed) so a sweep or trajectory
run can drop a ready-to-look-at figure next to its data file.
"""
from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

from .sweep import ResultTable  # noqa: E402

__all__ = ["render_sweep", "render_trajectory"]

_PANEL_KINDS = (
    ("omega2", "squared frequency", "linear"),
    ("period", "period", "linear"),
    ("rel_err", "relative period error", "log"),
)


def render_sweep(table: ResultTable, path: str) -> None:
    """One stacked panel per column family (omega2 / period / rel_err),
    every method as one line, NaN points left as gaps."""
    data = np.array(table.rows, dtype=float)
    x = data[:, 0]
    panels = []
    for suffix, ylabel, yscale in _PANEL_KINDS:
        cols = [(name[: -len(suffix) - 1], i)
                for i, name in enumerate(table.header)
                if name.endswith("_" + suffix)]
        if cols:
            panels.append((cols, ylabel, yscale))
    fig, axes = plt.subplots(len(panels), 1, figsize=(7.0, 2.0 + 2.6 * len(panels)),
                             sharex=True, squeeze=False)
    for ax, (cols, ylabel, yscale) in zip(axes[:, 0], panels):
        for label, i in cols:
            ax.plot(x, data[:, i], marker=".", markersize=3.5, linewidth=1.2,
                    label=label)
        ax.set_yscale(yscale)
        ax.set_ylabel(ylabel)
        ax.grid(True, alpha=0.3)
        ax.legend(fontsize=8)
    axes[-1, 0].set_xlabel(table.header[0])
    system = table.metadata.get("system", "")
    variable = table.metadata.get("variable", table.header[0])
    axes[0, 0].set_title(f"{system}: sweep over {variable}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_trajectory(table: ResultTable, path: str) -> None:
    """Two panels: integrated vs series displacement, and their absolute
    difference on a log scale."""
    data = np.array(table.rows, dtype=float)
    col = {name: i for i, name in enumerate(table.header)}
    t = data[:, col["time"]]
    fig, (ax_x, ax_err) = plt.subplots(2, 1, figsize=(7.0, 6.4), sharex=True)
    ax_x.plot(t, data[:, col["rk_position"]], linewidth=1.2, label="integrated")
    ax_x.plot(t, data[:, col["series_position"]], linewidth=1.0, linestyle="--",
              label="perturbative series")
    ax_x.set_ylabel("displacement")
    ax_x.grid(True, alpha=0.3)
    ax_x.legend(fontsize=8)
    err = np.abs(data[:, col["abs_error"]])
    tiny = math.ulp(1.0)
    ax_err.semilogy(t, np.maximum(err, tiny), linewidth=1.0, color="tab:red")
    ax_err.set_ylabel("|difference|")
    ax_err.set_xlabel("time")
    ax_err.grid(True, alpha=0.3)
    ax_x.set_title(f"{table.metadata.get('system', '')}: trajectory comparison")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)

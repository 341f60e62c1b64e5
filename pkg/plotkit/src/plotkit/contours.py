"""Contour sequence of the squeezed marginal grids (k = 0..6 snapshots)."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .spec import FigureSpec
from .tables import TableError, read_table, require_columns, require_rows

GRID_COLUMNS = ("Q1", "Pi1", "W")
EXPECTED_KS = tuple(range(7))


def _load_grid(path):
    meta, columns, data = read_table(path)
    require_columns(columns, GRID_COLUMNS, path)
    require_rows(data, path)
    for key in ("k", "q_count", "p_count"):
        if key not in meta:
            raise TableError(f"{path}: missing metadata key {key!r}")
    k = int(float(meta["k"]))
    nq, npts = int(float(meta["q_count"])), int(float(meta["p_count"]))
    if data.shape[0] != nq * npts:
        raise TableError(f"{path}: {data.shape[0]} rows, expected {nq}*{npts}")
    q_axis = data[:, columns.index("Q1")].reshape(nq, npts)[:, 0]
    p_axis = data[:, columns.index("Pi1")].reshape(nq, npts)[0, :]
    values = data[:, columns.index("W")].reshape(nq, npts)
    return k, meta, q_axis, p_axis, values


def _draw_panel(ax, q_axis, p_axis, values, cmap):
    ax.contourf(q_axis, p_axis, values.T, levels=np.linspace(0.0, 1.0, 21), cmap=cmap)
    ax.set_aspect("equal")


def render_contours(spec: FigureSpec):
    """Draw the 7-panel snapshot sequence; peak value maps to the light end.

    With split_panels set, also writes one decoration-free image per snapshot
    next to the combined figure (suffix `_k<k>`). Returns all written paths.
    """
    grids = {}
    for path in spec.inputs:
        k, meta, q_axis, p_axis, values = _load_grid(path)
        grids[k] = (meta, q_axis, p_axis, values)
    missing = [k for k in EXPECTED_KS if k not in grids]
    if missing:
        raise TableError(f"missing grid snapshot(s) k={missing}")

    fig, axes = plt.subplots(1, len(EXPECTED_KS), figsize=(2.4 * len(EXPECTED_KS), 2.8))
    for k, ax in zip(EXPECTED_KS, axes):
        meta, q_axis, p_axis, values = grids[k]
        _draw_panel(ax, q_axis, p_axis, values, spec.cmap)
        ax.set_title(f"k = {k}", fontsize=9)
        ax.set_xlabel("Q1")
        if k == 0:
            ax.set_ylabel("Pi1")
    fig.tight_layout()
    spec.output.parent.mkdir(parents=True, exist_ok=True)
    written = []
    fig.savefig(spec.output, dpi=spec.dpi, metadata={"Software": None})
    plt.close(fig)
    written.append(spec.output)

    if spec.split_panels:
        for k in EXPECTED_KS:
            meta, q_axis, p_axis, values = grids[k]
            panel_fig, panel_ax = plt.subplots(figsize=(3.0, 3.0))
            _draw_panel(panel_ax, q_axis, p_axis, values, spec.cmap)
            panel_ax.set_axis_off()
            panel_fig.subplots_adjust(left=0.0, right=1.0, bottom=0.0, top=1.0)
            panel_path = spec.output.with_name(f"{spec.output.stem}_k{k}{spec.output.suffix}")
            panel_fig.savefig(panel_path, dpi=spec.dpi, metadata={"Software": None})
            plt.close(panel_fig)
            written.append(panel_path)
    return written

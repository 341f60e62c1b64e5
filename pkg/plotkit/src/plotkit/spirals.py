"""Phase portraits: trajectory paths colored by time, one row per input table."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.collections import LineCollection

from .spec import FigureSpec
from .tables import TableError, read_table, require_columns, require_rows

TRAJECTORY_COLUMNS = ("tau", "Q1", "Q2", "Pi1", "Pi2")

PLANES = {
    "Q1-Pi1": ("Q1", "Pi1"),
    "Q2-Pi2": ("Q2", "Pi2"),
    "Q1-Pi2": ("Q1", "Pi2"),
    "Q2-Pi1": ("Q2", "Pi1"),
}


def _colored_path(ax, u, v, tau, cmap):
    points = np.column_stack([u, v]).reshape(-1, 1, 2)
    segments = np.concatenate([points[:-1], points[1:]], axis=1)
    collection = LineCollection(segments, cmap=cmap, linewidth=1.2)
    collection.set_array(0.5 * (tau[:-1] + tau[1:]))
    collection.set_clim(tau[0], tau[-1])
    ax.add_collection(collection)
    pad = 0.05 * max(np.ptp(u), np.ptp(v), 1e-12)
    ax.set_xlim(u.min() - pad, u.max() + pad)
    ax.set_ylim(v.min() - pad, v.max() + pad)
    ax.set_aspect("equal")


def render_spirals(spec: FigureSpec):
    """Draw each requested plane of each trajectory table; path color encodes
    tau from dark (start) to light (end). Returns the written path."""
    for plane in spec.planes:
        if plane not in PLANES:
            raise TableError(f"unknown plane {plane!r}; choose from {sorted(PLANES)}")
    loaded = []
    for path in spec.inputs:
        meta, columns, data = read_table(path)
        require_columns(columns, TRAJECTORY_COLUMNS, path)
        require_rows(data, path)
        loaded.append((meta, columns, data))

    n_rows, n_cols = len(loaded), len(spec.planes)
    fig, axes = plt.subplots(
        n_rows, n_cols, figsize=(3.2 * n_cols, 3.0 * n_rows), squeeze=False
    )
    for i, (meta, columns, data) in enumerate(loaded):
        tau = data[:, columns.index("tau")]
        for j, plane in enumerate(spec.planes):
            u_name, v_name = PLANES[plane]
            ax = axes[i][j]
            _colored_path(ax, data[:, columns.index(u_name)],
                          data[:, columns.index(v_name)], tau, spec.cmap)
            ax.set_xlabel(u_name)
            ax.set_ylabel(v_name)
            if "eps_ratio" in meta:
                ax.set_title(f"eps = {meta['eps_ratio']}", fontsize=9)
    fig.tight_layout()
    spec.output.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(spec.output, dpi=spec.dpi, metadata={"Software": None})
    plt.close(fig)
    return spec.output

"""Tabular exports with provenance headers.

CSV: `# key: value` provenance lines, a header row, then comma-separated
values at 17 significant digits (round-trippable doubles). JSON: one object
with `meta`, `columns` and `data`. Neither format embeds timestamps, so
identical inputs produce byte-identical files.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DomainError

_FLOAT_FMT = "%.17g"


@dataclass(frozen=True)
class ExportTable:
    """Column names, row-major numeric data, and provenance metadata."""

    columns: tuple
    rows: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=float)
        if rows.ndim != 2:
            raise DomainError(f"rows must be 2-dimensional, got shape {rows.shape}")
        if rows.shape[1] != len(self.columns):
            raise DomainError(
                f"row width {rows.shape[1]} does not match {len(self.columns)} columns"
            )
        rows.setflags(write=False)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "columns", tuple(self.columns))


def write_csv(table: ExportTable, path) -> Path:
    path = Path(path)
    lines = [f"# {key}: {value}" for key, value in table.meta.items()]
    lines.append(",".join(table.columns))
    for row in table.rows:
        lines.append(",".join(_FLOAT_FMT % v for v in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def write_json(table: ExportTable, path) -> Path:
    path = Path(path)
    payload = {
        "meta": dict(table.meta),
        "columns": list(table.columns),
        "data": [[float(v) for v in row] for row in table.rows],
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh)
        fh.write("\n")
    return path


def write_table(table: ExportTable, directory, stem: str, fmt: str) -> Path:
    """Write `stem`.{csv|json} under `directory` and return the path."""
    if fmt not in ("csv", "json"):
        raise DomainError(f"format must be 'csv' or 'json', got {fmt!r}")
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    writer = write_csv if fmt == "csv" else write_json
    return writer(table, directory / f"{stem}.{fmt}")

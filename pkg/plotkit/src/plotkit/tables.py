"""Readers for the export schema: CSV with `# key: value` provenance lines or
JSON objects with meta/columns/data."""

import json
from pathlib import Path

import numpy as np


class TableError(Exception):
    """Missing, malformed, or unusable export table."""


def read_table(path):
    """Return (meta dict, column names, float array of shape (rows, cols))."""
    path = Path(path)
    if not path.exists():
        raise TableError(f"{path}: no such file")
    if path.suffix == ".json":
        payload = json.loads(path.read_text(encoding="utf-8"))
        columns = list(payload["columns"])
        data = np.asarray(payload["data"], dtype=float).reshape(-1, len(columns))
        return dict(payload["meta"]), columns, data
    meta = {}
    columns = None
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition(":")
                meta[key.strip()] = value.strip()
                continue
            if columns is None:
                columns = line.split(",")
                continue
            rows.append([float(v) for v in line.split(",")])
    if columns is None:
        raise TableError(f"{path}: no header row")
    data = np.array(rows, dtype=float) if rows else np.empty((0, len(columns)))
    return meta, columns, data


def require_columns(columns, needed, path):
    """Raise TableError naming the first missing column."""
    for name in needed:
        if name not in columns:
            raise TableError(f"{path}: missing column {name!r}")


def require_rows(data, path):
    if data.shape[0] == 0:
        raise TableError(f"{path}: table has no data rows")

"""Shared helpers for the test suite."""

import csv
import json
from pathlib import Path

import numpy as np


def read_csv_table(path):
    """Read a provenance-headed CSV export: (meta dict, columns, float array)."""
    meta = {}
    rows = []
    columns = None
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition(":")
                meta[key.strip()] = value.strip()
                continue
            if columns is None:
                columns = line.strip().split(",")
                continue
            rows.append([float(v) for v in line.strip().split(",")])
    return meta, columns, np.array(rows)


def read_json_table(path):
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    return payload["meta"], payload["columns"], np.array(payload["data"], dtype=float)


def read_table(path):
    path = Path(path)
    if path.suffix == ".json":
        return read_json_table(path)
    return read_csv_table(path)

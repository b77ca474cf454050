"""Shared CSV loading for the figure scripts: strict, display-only."""

from __future__ import annotations

import csv
import re
import sys
from pathlib import Path

import numpy as np


class FigureInputError(Exception):
    pass


def load_columns(path: str | Path, expected: list[str] | None = None) -> dict[str, np.ndarray]:
    """Load a CSV into named float columns; empty or malformed files raise."""
    path = Path(path)
    if not path.is_file():
        raise FigureInputError(f"input CSV not found: {path}")
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise FigureInputError(f"{path}: empty file") from None
        rows = list(reader)
    if not rows:
        raise FigureInputError(f"{path}: no data rows")
    if expected is not None and header[: len(expected)] != expected:
        raise FigureInputError(f"{path}: expected columns {expected}, got {header}")
    data: dict[str, np.ndarray] = {}
    for i, name in enumerate(header):
        try:
            data[name] = np.array([float(row[i]) for row in rows])
        except (ValueError, IndexError) as exc:
            raise FigureInputError(f"{path}: bad value in column {name!r}: {exc}") from exc
    return data


def label_from_filename(path: str | Path, key: str, prefix: str) -> str:
    """Extract e.g. 't=2' from snap_t2.csv or 'r=0.1' from edge_trajectory_r0.1.csv."""
    match = re.search(rf"{key}([-+0-9.eE]+)", Path(path).stem)
    return f"{prefix}={match.group(1)}" if match else Path(path).stem


def run_cli(main_fn, argv: list[str] | None = None) -> int:
    """Uniform wrapper: FigureInputError prints and exits nonzero."""
    try:
        return main_fn(argv if argv is not None else sys.argv[1:])
    except FigureInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

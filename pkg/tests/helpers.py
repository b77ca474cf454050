from __future__ import annotations

import numpy as np

from sharpfront.csvio import read_csv_columns


def assert_valid_csv(path, expected_header: list[str], numeric_from: int = 0):
    """Header present, constant column count, numeric cells finite."""
    header, columns = read_csv_columns(path)
    assert header == expected_header, f"{path}: header {header} != {expected_header}"
    for col in columns[numeric_from:]:
        values = np.array([float(v) for v in col])
        assert np.all(np.isfinite(values)), f"{path}: non-finite values"
    return header, columns

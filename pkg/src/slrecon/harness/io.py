"""CSV emission with round-trip exact decimal output."""

from __future__ import annotations

from pathlib import Path

import numpy as np


def write_csv(path: str | Path, header: list[str], columns) -> Path:
    """Write equal-length columns under ``header`` with 17 significant digits."""
    data = np.column_stack([np.ravel(np.asarray(c, dtype=float)) for c in columns])
    if data.shape[1] != len(header):
        raise ValueError("header and column count differ")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(path, data, fmt="%.17g", delimiter=",", header=",".join(header), comments="")
    return path


def read_csv(path: str | Path) -> tuple[list[str], np.ndarray]:
    path = Path(path)
    with path.open() as fh:
        header = fh.readline().strip().split(",")
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return header, data

"""Butcher tables for diagonally implicit Runge-Kutta and BDF coefficients."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np


@dataclass(frozen=True)
class ButcherTable:
    """Lower-triangular ``A`` with weights ``b`` and abscissae ``c``."""

    name: str
    A: np.ndarray = field(repr=False)
    b: np.ndarray = field(repr=False)
    c: np.ndarray = field(repr=False)
    order: int = 1

    def __post_init__(self) -> None:
        s = len(self.b)
        if self.A.shape != (s, s) or len(self.c) != s:
            raise ValueError("inconsistent Butcher table shapes")
        if np.any(np.triu(self.A, 1) != 0):
            raise ValueError("diagonally implicit tables must be lower triangular")
        if not np.allclose(self.A.sum(axis=1), self.c, atol=1e-14):
            raise ValueError("row sums of A must equal c")

    @property
    def stages(self) -> int:
        return len(self.b)

    @property
    def stiffly_accurate(self) -> bool:
        return bool(np.array_equal(self.A[-1], self.b))


def _table(name, rows, b, c, order) -> ButcherTable:
    s = len(b)
    a = np.zeros((s, s))
    for i, row in enumerate(rows):
        a[i, : len(row)] = [float(v) for v in row]
    return ButcherTable(name, a, np.array([float(v) for v in b]), np.array([float(v) for v in c]), order)


def implicit_euler_table() -> ButcherTable:
    return _table("euler", [[1]], [1], [1], 1)


def dirk2_table() -> ButcherTable:
    """Two-stage, second-order, L-stable and stiffly accurate."""
    al = 1.0 - math.sqrt(2.0) / 2.0
    return _table("dirk2", [[al], [1.0 - al, al]], [1.0 - al, al], [al, 1.0], 2)


def dirk43_table() -> ButcherTable:
    """Four-stage, third-order table with an explicit first stage."""
    g = Fraction(1767732205903, 4055673282236)
    b2 = Fraction(-4482444167858, 7529755066697)
    b3 = Fraction(11266239266428, 11593286722821)
    d = Fraction(-640167445237, 6845629431997)
    c3 = Fraction(3, 5)
    b1 = 1 - b2 - b3 - g
    rows = [[0], [g, g], [c3 - d - g, d, g], [b1, b2, b3, g]]
    return _table("dirk43", rows, [b1, b2, b3, g], [0, 2 * g, c3, 1], 3)


TABLES = {"euler": implicit_euler_table, "dirk2": dirk2_table, "dirk43": dirk43_table}


@dataclass(frozen=True)
class BdfCoeffs:
    """``y^{n+1} = sum_k alpha[k-1] y^{n+1-k} + beta dt f(y^{n+1})``."""

    order: int
    alpha: tuple[float, ...]
    beta: float

    @property
    def steps(self) -> int:
        return len(self.alpha)


def bdf_coeffs(order: int) -> BdfCoeffs:
    if order == 2:
        return BdfCoeffs(2, (4 / 3, -1 / 3), 2 / 3)
    if order == 3:
        return BdfCoeffs(3, (18 / 11, -9 / 11, 2 / 11), 6 / 11)
    raise ValueError(f"BDF order must be 2 or 3, got {order}")


def startup_table(order: int) -> ButcherTable:
    """DIRK of matching order used to fill the BDF history."""
    return dirk2_table() if order == 2 else dirk43_table()

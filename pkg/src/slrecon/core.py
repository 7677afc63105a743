"""Uniform grids, cell-average fields, shift decomposition and ghost cells."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np


class NumericalError(RuntimeError):
    """Raised when a computation produces non-finite or unphysical values."""


class OutOfDomainError(NumericalError):
    """Raised when a characteristic foot falls outside the reconstructable range."""


class BoundaryPolicy(enum.Enum):
    PERIODIC = "periodic"
    FREEFLOW = "freeflow"

    @classmethod
    def parse(cls, value: BoundaryPolicy | str) -> BoundaryPolicy:
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown boundary policy: {value!r}") from None


PERIODIC = BoundaryPolicy.PERIODIC
FREEFLOW = BoundaryPolicy.FREEFLOW


@dataclass(frozen=True)
class Grid1D:
    n: int
    x_min: float
    x_max: float

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n <= 0:
            raise ValueError(f"cell count must be a positive integer, got {self.n}")
        if not self.x_max > self.x_min:
            raise ValueError("x_max must exceed x_min")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n

    @property
    def centers(self) -> np.ndarray:
        return self.x_min + (np.arange(self.n) + 0.5) * self.dx

    @property
    def edges(self) -> np.ndarray:
        return self.x_min + np.arange(self.n + 1) * self.dx


@dataclass(frozen=True)
class Grid2D:
    nx: int
    ny: int
    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self) -> None:
        Grid1D(self.nx, self.x_min, self.x_max)
        Grid1D(self.ny, self.y_min, self.y_max)

    @property
    def xgrid(self) -> Grid1D:
        return Grid1D(self.nx, self.x_min, self.x_max)

    @property
    def ygrid(self) -> Grid1D:
        return Grid1D(self.ny, self.y_min, self.y_max)

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.nx

    @property
    def dy(self) -> float:
        return (self.y_max - self.y_min) / self.ny

    def meshgrid(self) -> tuple[np.ndarray, np.ndarray]:
        """Cell centers as ``(X, Y)`` arrays of shape ``(nx, ny)``."""
        return np.meshgrid(self.xgrid.centers, self.ygrid.centers, indexing="ij")


def _frozen_array(values, shape) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.shape != shape:
        raise ValueError(f"expected values of shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("cell values must be finite")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class CellField1D:
    grid: Grid1D
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _frozen_array(self.values, (self.grid.n,)))

    def total(self) -> float:
        """Discrete mass ``sum(values) * dx``."""
        return float(np.sum(self.values) * self.grid.dx)


@dataclass(frozen=True)
class CellField2D:
    grid: Grid2D
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        shape = (self.grid.nx, self.grid.ny)
        object.__setattr__(self, "values", _frozen_array(self.values, shape))

    def total(self) -> float:
        return float(np.sum(self.values) * self.grid.dx * self.grid.dy)


@dataclass(frozen=True)
class ShiftQuery:
    """A displacement expressed as ``(offset + theta) * dx``."""

    offset: int
    theta: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta < 1.0:
            raise ValueError(f"theta must lie in [0, 1), got {self.theta}")


def decompose_shift(displacement: float, dx: float) -> ShiftQuery:
    """Split ``displacement`` into a whole-cell offset and a fraction in [0, 1).

    >>> decompose_shift(-0.25, 1.0)
    ShiftQuery(offset=-1, theta=0.75)
    """
    if not math.isfinite(displacement):
        raise ValueError(f"displacement must be finite, got {displacement}")
    if not dx > 0:
        raise ValueError(f"dx must be positive, got {dx}")
    ratio = displacement / dx
    nearest = round(ratio)
    if abs(ratio - nearest) <= 4 * math.ulp(max(1.0, abs(ratio))):
        # whole-cell shifts stay exact copies despite round-off in the ratio
        ratio = float(nearest)
    offset = math.floor(ratio)
    theta = ratio - offset
    if theta >= 1.0:
        # round-off, e.g. ratio = 2.9999999999999996
        offset, theta = offset + 1, 0.0
    elif theta < 0.0:
        theta = 0.0
    return ShiftQuery(int(offset), float(theta))


def ghost_extend(values, policy: BoundaryPolicy | str, width: int, axis: int = 0) -> np.ndarray:
    """Pad ``values`` with ``width`` ghost cells on both ends of ``axis``.

    Periodic wraps indices modulo n; FreeFlow replicates the boundary cell.
    """
    if width < 0:
        raise ValueError("ghost width must be non-negative")
    policy = BoundaryPolicy.parse(policy)
    if isinstance(values, (CellField1D, CellField2D)):
        values = values.values
    arr = np.asarray(values, dtype=float)
    n = arr.shape[axis]
    idx = np.arange(-width, n + width)
    if policy is BoundaryPolicy.PERIODIC:
        idx = np.mod(idx, n)
    else:
        idx = np.clip(idx, 0, n - 1)
    return np.take(arr, idx, axis=axis)

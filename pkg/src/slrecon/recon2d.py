"""Separable two-dimensional sliding-average reconstruction.

The basic reconstruction is built dimension by dimension: a 1D
reconstruction along x of every row of cell averages gives
``a^(l1)_{i,j}``, the y-averages of the x-derivatives; a second pass along y
of each ``a^(l1)`` gives the full tensor ``R^(l1,l2)_{i,j}``, ``l1, l2 <= k``.
The second pass derives its nonlinear weights (or PFC limiters) from
``a^(0)`` and applies them unchanged to every ``a^(l1)``, so all mixed
derivatives of one cell come from the same y-polynomial combination.

PFC is the exception at evaluation time: the y-pass is applied to the
x-sliding averages of the rows, with limiters computed from those positive
values, which keeps the result positive as well as conservative.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from slrecon.core import (
    BoundaryPolicy,
    CellField2D,
    Grid2D,
    NumericalError,
    OutOfDomainError,
    ShiftQuery,
    decompose_shift,
    ghost_extend,
)
from slrecon.recon1d import (
    CwenoParams,
    Reconstruction,
    alpha_coeff,
    beta_coeff,
    cell_average_weight,
    kind_degree,
    scaled_derivatives,
    stencil_radius,
)


@dataclass(frozen=True)
class ReconCoeffs2D:
    """``table[l1, l2, px + i, py + j]`` holds ``R_{i,j}^(l1,l2)``."""

    k: int
    grid: Grid2D
    table: np.ndarray = field(repr=False)
    policy: BoundaryPolicy = BoundaryPolicy.PERIODIC
    pad: tuple[int, int] = (0, 0)
    kind: str = "cweno23"
    stage1: np.ndarray | None = field(default=None, repr=False)

    def _columns(self, cells, n: int, pad: int, width: int) -> np.ndarray:
        cells = np.asarray(cells)
        if self.policy is BoundaryPolicy.PERIODIC:
            return np.mod(cells, n)
        col = cells + pad
        if np.any(col < 0) or np.any(col >= width):
            raise OutOfDomainError(f"cells outside the reconstructed range (pad {pad})")
        return col

    def columns_x(self, cells) -> np.ndarray:
        return self._columns(cells, self.grid.nx, self.pad[0], self.table.shape[2])

    def columns_y(self, cells) -> np.ndarray:
        return self._columns(cells, self.grid.ny, self.pad[1], self.table.shape[3])

    def scaled(self) -> np.ndarray:
        """``dx^l1 dy^l2 R^(l1,l2)``."""
        ell = np.arange(self.k + 1)
        sx = self.grid.dx**ell
        sy = self.grid.dy**ell
        return self.table * (sx[:, None] * sy[None, :])[:, :, None, None]

    def cell_averages(self) -> np.ndarray:
        w = np.array([cell_average_weight(ell) for ell in range(self.k + 1)])
        return np.einsum("a,b,abij->ij", w, w, self.scaled())


def build_coeffs_2d(
    values,
    dx: float,
    dy: float,
    kind: str = "cweno23",
    policy: BoundaryPolicy | str = BoundaryPolicy.PERIODIC,
    params: CwenoParams | None = None,
    pad: tuple[int, int] = (0, 0),
    origin: tuple[float, float] = (0.0, 0.0),
) -> ReconCoeffs2D:
    """Array-level separable reconstruction of an ``(nx, ny)`` field."""
    policy = BoundaryPolicy.parse(policy)
    values = np.asarray(values, dtype=float)
    if values.ndim != 2:
        raise ValueError("expected a 2D array of cell averages")
    nx, ny = values.shape
    r = stencil_radius(kind)
    k = kind_degree(kind)
    if min(nx, ny) <= k:
        raise ValueError(f"{kind} stencil exceeds the {nx}x{ny} grid")
    if kind == "pfc" and np.any(values <= 0):
        raise ValueError("PFC reconstruction requires strictly positive cell averages")
    if policy is BoundaryPolicy.PERIODIC:
        pad = (0, 0)
    px, py = pad
    ext = ghost_extend(ghost_extend(values, policy, px + r, axis=0), policy, py + r, axis=1)
    grid = Grid2D(nx, ny, origin[0], origin[0] + nx * dx, origin[1], origin[1] + ny * dy)

    # stage 1 along x: (k+1, nx + 2px, ny + 2py + 2r)
    a, _ = scaled_derivatives(ext, kind, dx, params, umax=float(np.max(values)))
    # stage 2 along y, weights fixed by the zeroth x-coefficient
    stack = np.ascontiguousarray(np.transpose(a, (2, 1, 0)))
    umax = float(np.max(a[0]))
    s, _ = scaled_derivatives(stack, kind, dy, params, umax=umax, stacked=True)
    # (l2, y, x, l1) -> (l1, l2, x, y)
    scaled = np.transpose(s, (3, 0, 2, 1))
    ell = np.arange(k + 1)
    table = scaled / ((dx**ell)[:, None] * (dy**ell)[None, :])[:, :, None, None]
    return ReconCoeffs2D(k, grid, table, policy, (px, py), kind, a)


def basic_2d_separable(field: CellField2D, kind: str = "cweno23", params: CwenoParams | None = None,
                       policy=BoundaryPolicy.PERIODIC, pad: tuple[int, int] = (0, 0)) -> ReconCoeffs2D:
    g = field.grid
    return build_coeffs_2d(field.values, g.dx, g.dy, kind, policy, params, pad, (g.x_min, g.y_min))


def _weights(k: int, t: float) -> tuple[np.ndarray, np.ndarray]:
    return (np.array([alpha_coeff(ell, t) for ell in range(k + 1)]),
            np.array([beta_coeff(ell, t) for ell in range(k + 1)]))


def _q_block(coeffs: ReconCoeffs2D, ci, cj, theta: float, eta: float) -> np.ndarray:
    ax, bx = _weights(coeffs.k, theta)
    ay, by = _weights(coeffs.k, eta)
    i0, i1 = coeffs.columns_x(ci), coeffs.columns_x(np.asarray(ci) + 1)
    j0, j1 = coeffs.columns_y(cj), coeffs.columns_y(np.asarray(cj) + 1)
    if coeffs.kind == "pfc" and coeffs.stage1 is not None:
        s1 = coeffs.stage1
        rows = np.einsum("a,aij->ij", ax, s1[:, i0]) + np.einsum("a,aij->ij", bx, s1[:, i1])
        ys, _ = scaled_derivatives(rows.T, "pfc", coeffs.grid.dy, umax=float(np.max(rows)))
        ys = np.transpose(ys, (0, 2, 1))
        return np.einsum("a,aij->ij", ay, ys[:, :, j0]) + np.einsum("a,aij->ij", by, ys[:, :, j1])
    s = coeffs.scaled()
    rows = np.tensordot(ax, s[:, :, i0], 1) + np.tensordot(bx, s[:, :, i1], 1)
    return np.tensordot(ay, rows[:, :, j0], 1) + np.tensordot(by, rows[:, :, j1], 1)


def q_eval_2d(coeffs: ReconCoeffs2D, i: int, j: int, theta: float, eta: float) -> float:
    """Sliding average over the cell ``(i, j)`` moved by ``(theta dx, eta dy)``."""
    for t in (theta, eta):
        if not 0.0 <= t < 1.0:
            raise ValueError(f"fractions must lie in [0, 1), got {t}")
    return float(_q_block(coeffs, [i], [j], theta, eta)[0, 0])


def q_shifted_values_2d(coeffs: ReconCoeffs2D, sx: ShiftQuery, sy: ShiftQuery) -> np.ndarray:
    ci = np.arange(coeffs.grid.nx) + sx.offset
    cj = np.arange(coeffs.grid.ny) + sy.offset
    return _q_block(coeffs, ci, cj, sx.theta, sy.theta)


def q_shifted_field_2d(coeffs: ReconCoeffs2D, sx: ShiftQuery, sy: ShiftQuery) -> CellField2D:
    return CellField2D(coeffs.grid, q_shifted_values_2d(coeffs, sx, sy))


def shift_2d(values, dx: float, dy: float, disp_x: float, disp_y: float,
             recon: Reconstruction | str = "cweno23", policy=BoundaryPolicy.PERIODIC) -> np.ndarray:
    """Sliding averages of every cell centred at ``(x_i + disp_x, y_j + disp_y)``."""
    if isinstance(recon, str):
        recon = Reconstruction(recon)
    values = np.asarray(values, dtype=float)
    sx = decompose_shift(disp_x, dx)
    sy = decompose_shift(disp_y, dy)
    if (sx.offset, sx.theta, sy.offset, sy.theta) == (0, 0.0, 0, 0.0):
        return values.copy()
    pad = (max(abs(sx.offset), abs(sx.offset + 1)), max(abs(sy.offset), abs(sy.offset + 1)))
    coeffs = build_coeffs_2d(values, dx, dy, recon.kind, policy, recon.params, pad)
    out = q_shifted_values_2d(coeffs, sx, sy)
    if not np.all(np.isfinite(out)):
        raise NumericalError("non-finite value in 2D reconstruction")
    return out

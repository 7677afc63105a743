"""Conservative sliding-average reconstruction in one dimension.

A *basic* reconstruction produces, for every cell ``i``, a degree-``k``
polynomial

    R_i(x) = sum_l R_i^(l) / l! * (x - x_i)^l

whose cell average equals the data. The sliding average of the piecewise
polynomial over the shifted cell ``[x_{i-1/2} + theta dx, x_{i+1/2} + theta dx]``
is

    Q_{i+theta} = sum_l dx^l (alpha_l(theta) R_i^(l) + beta_l(theta) R_{i+1}^(l)),

which sums to the original data for periodic fields, for every theta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from slrecon.core import (
    BoundaryPolicy,
    CellField1D,
    Grid1D,
    NumericalError,
    OutOfDomainError,
    ShiftQuery,
    decompose_shift,
    ghost_extend,
)

KINDS = ("lagrange0", "lagrange2", "lagrange4", "cweno23", "cweno23z", "cweno35", "cwenoz35", "pfc")


# {{{ sliding-average coefficients


def _check_theta(theta) -> np.ndarray:
    t = np.asarray(theta, dtype=float)
    if np.any(t < 0.0) or np.any(t >= 1.0):
        raise ValueError(f"theta must lie in [0, 1), got {theta}")
    return t


def alpha_coeff(ell: int, theta):
    """Weight of ``dx^l R_i^(l)`` in the sliding average (left cell part)."""
    if ell < 0:
        raise ValueError("ell must be non-negative")
    t = _check_theta(theta)
    val = (1.0 - (2.0 * t - 1.0) ** (ell + 1)) / (2.0 ** (ell + 1) * math.factorial(ell + 1))
    return float(val) if val.ndim == 0 else val


def beta_coeff(ell: int, theta):
    """Weight of ``dx^l R_{i+1}^(l)`` in the sliding average (right cell part)."""
    if ell < 0:
        raise ValueError("ell must be non-negative")
    t = _check_theta(theta)
    val = ((2.0 * t - 1.0) ** (ell + 1) - (-1.0) ** (ell + 1)) / (
        2.0 ** (ell + 1) * math.factorial(ell + 1)
    )
    return float(val) if val.ndim == 0 else val


def cell_average_weight(ell: int) -> float:
    """``(1/dx) int_{I_i} (x - x_i)^l / l! dx / dx^l``: zero for odd ``ell``."""
    if ell % 2:
        return 0.0
    return 1.0 / (2.0**ell * math.factorial(ell + 1))


# }}}


# {{{ stencil algebra


@lru_cache(maxsize=None)
def taylor_matrix(offsets: tuple[int, ...], degree: int) -> np.ndarray:
    """Map cell averages on ``offsets`` to scaled derivatives at the center.

    Returns ``M`` of shape ``(degree + 1, len(offsets))`` such that
    ``dx^m P^(m)(x_i) = M[m] @ ubar[i + offsets]`` where ``P`` is the unique
    polynomial of ``degree`` matching the cell averages. Exact rationals.
    """
    if len(offsets) != degree + 1:
        raise ValueError("need exactly degree + 1 cells")
    half = Fraction(1, 2)
    rows = []
    for s in offsets:
        rows.append([
            ((s + half) ** (m + 1) - (s - half) ** (m + 1)) / math.factorial(m + 1)
            for m in range(degree + 1)
        ])
    inv = _rational_inverse(rows)
    return np.array([[float(v) for v in row] for row in inv])


def _rational_inverse(a: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [vr - f * vc for vr, vc in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


@lru_cache(maxsize=None)
def indicator_gram(degree: int) -> np.ndarray:
    """Gram matrix ``G`` with ``beta = D^T G D`` for scaled derivatives ``D``.

    ``beta = sum_{l=1}^{degree} dx^(2l-1) int_{I_i} (P^(l))^2 dx``.
    """
    def moment(n: int) -> Fraction:
        return Fraction(0) if n % 2 else Fraction(1, (n + 1) * 2**n)

    g = [[Fraction(0)] * (degree + 1) for _ in range(degree + 1)]
    for ell in range(1, degree + 1):
        for a in range(ell, degree + 1):
            for b in range(ell, degree + 1):
                g[a][b] += moment(a - ell + b - ell) / (
                    math.factorial(a - ell) * math.factorial(b - ell)
                )
    return np.array([[float(v) for v in row] for row in g])


# }}}


# {{{ coefficient tables


@dataclass(frozen=True)
class CwenoParams:
    """Nonlinear-weight settings for the CWENO family.

    ``weights`` lists the linear weights ``(C_L, C_C, C_R)`` for degree 2
    and ``(C_1, C_2, C_3, C_C)`` for degree 4; ``None`` selects the defaults.
    ``epsilon=None`` means ``dx**2``.
    """

    epsilon: float | None = None
    p: int = 2
    weights: tuple[float, ...] | None = None
    z_variant: bool = False

    def __post_init__(self) -> None:
        if self.epsilon is not None and not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if self.p < 1:
            raise ValueError("p must be a positive integer")
        if self.weights is not None:
            _validate_weights(self.weights)

    def resolved_weights(self, degree: int) -> tuple[float, ...]:
        if self.weights is None:
            return DEFAULT_WEIGHTS[degree]
        if len(self.weights) != len(DEFAULT_WEIGHTS[degree]):
            raise ValueError(f"degree {degree} expects {len(DEFAULT_WEIGHTS[degree])} weights")
        return tuple(self.weights)

    def resolved_epsilon(self, dx: float) -> float:
        return dx * dx if self.epsilon is None else self.epsilon


# the degree-4 central polynomial printed for CWENO35 corresponds to (1/8, 1/4, 1/8, 1/2)
DEFAULT_WEIGHTS = {2: (0.25, 0.5, 0.25), 4: (0.125, 0.25, 0.125, 0.5)}


def _validate_weights(w) -> None:
    w = tuple(float(c) for c in w)
    if any(c < 0 for c in w):
        raise ValueError("linear weights must be non-negative")
    if abs(sum(w) - 1.0) > 1e-12:
        raise ValueError("linear weights must sum to one")
    sides = w[:-1] if len(w) == 4 else (w[0], w[2])
    if abs(sides[0] - sides[-1]) > 1e-15:
        raise ValueError("outer linear weights must be equal")
    if (w[-1] if len(w) == 4 else w[1]) <= 0:
        raise ValueError("central linear weight must be positive")


@dataclass(frozen=True)
class ReconCoeffs1D:
    """Per-cell derivative coefficients ``R_i^(l)``, ``l = 0..k``.

    ``table[l, pad + i]`` holds ``R_i^(l)`` for logical cells
    ``i = -pad .. n + pad - 1``. Periodic tables use ``pad = 0`` and wrap.
    """

    k: int
    grid: Grid1D
    table: np.ndarray = field(repr=False)
    policy: BoundaryPolicy = BoundaryPolicy.PERIODIC
    pad: int = 0
    weights: np.ndarray | None = field(default=None, repr=False)

    @property
    def dx(self) -> float:
        return self.grid.dx

    @property
    def n(self) -> int:
        return self.grid.n

    def columns(self, cells) -> np.ndarray:
        cells = np.asarray(cells)
        if self.policy is BoundaryPolicy.PERIODIC:
            return np.mod(cells, self.n)
        col = cells + self.pad
        if np.any(col < 0) or np.any(col >= self.table.shape[1]):
            raise OutOfDomainError(
                f"cells outside the reconstructed range [-{self.pad}, {self.n + self.pad})"
            )
        return col

    def scaled(self) -> np.ndarray:
        """``dx^l R^(l)``, all in solution units."""
        return self.table * (self.dx ** np.arange(self.k + 1))[:, None]

    def cell_averages(self) -> np.ndarray:
        """Cell averages of every stored polynomial (the conservation identity)."""
        w = np.array([cell_average_weight(ell) for ell in range(self.k + 1)])
        return w @ self.scaled()

    def evaluate(self, i: int, x) -> np.ndarray:
        """Point values of ``R_i`` at physical coordinates ``x``."""
        col = int(self.columns(i))
        xi = (x - self.grid.centers[0] - i * self.dx) / self.dx
        d = self.scaled()[:, col]
        return sum(d[m] * np.asarray(xi) ** m / math.factorial(m) for m in range(self.k + 1))


def _windows(ext: np.ndarray, r: int) -> np.ndarray:
    """``win[j, ..., s] = ext[j + s]``: stencils of width ``2r + 1`` along axis 0."""
    return sliding_window_view(ext, 2 * r + 1, axis=0)


def _stencil_derivs(win: np.ndarray, offsets: tuple[int, ...], r: int, k: int) -> np.ndarray:
    """Scaled derivatives (padded to ``k + 1`` rows) of the polynomial on ``offsets``."""
    mat = taylor_matrix(offsets, len(offsets) - 1)
    out = np.zeros((k + 1,) + win.shape[:-1])
    out[: len(offsets)] = np.tensordot(mat, win[..., [o + r for o in offsets]], axes=([1], [-1]))
    return out


def _lagrange_scaled(ext: np.ndarray, k: int) -> np.ndarray:
    r = k // 2
    return _stencil_derivs(_windows(ext, r), tuple(range(-r, r + 1)), r, k)


def _cweno_polys(ext: np.ndarray, k: int, params: CwenoParams):
    """Side polynomials followed by the central one, and their linear weights."""
    r = k // 2
    win = _windows(ext, r)
    subs = [(-1, 0), (0, 1)] if k == 2 else [(-2, -1, 0), (-1, 0, 1), (0, 1, 2)]
    cw = params.resolved_weights(k)
    if k == 2:
        c_side, c_c = (cw[0], cw[2]), cw[1]
    else:
        c_side, c_c = cw[:-1], cw[-1]
    polys = [_stencil_derivs(win, offs, r, k) for offs in subs]
    opt = _stencil_derivs(win, tuple(range(-r, r + 1)), r, k)
    polys.append((opt - sum(c * d for c, d in zip(c_side, polys))) / c_c)
    return polys, np.array(list(c_side) + [c_c])


def _cweno_scaled(ext: np.ndarray, k: int, params: CwenoParams, eps: float, omega=None,
                  stacked: bool = False):
    polys, lin = _cweno_polys(ext, k, params)
    if omega is None:
        gram = indicator_gram(k)
        lead = [d[..., :1] for d in polys] if stacked else polys
        beta = np.array([np.einsum("a...,ab,b...->...", d, gram, d) for d in lead])
        lin = lin.reshape((-1,) + (1,) * (beta.ndim - 1))
        if params.z_variant:
            tau = np.abs(beta[-2] - beta[0])
            alpha = lin * (1.0 + tau / (eps + beta)) ** params.p
        else:
            alpha = lin / (eps + beta) ** params.p
        omega = alpha / np.sum(alpha, axis=0)
    scaled = sum(w * d for w, d in zip(omega, polys))
    return scaled, omega


def _pfc_limiters(ext: np.ndarray, umax: float) -> np.ndarray:
    u0 = ext[1:-1]
    dp = ext[2:] - u0
    dm = u0 - ext[:-2]
    with np.errstate(divide="ignore", invalid="ignore"):
        eps_p = np.where(
            dp > 0, np.minimum(1.0, 2.0 * u0 / dp),
            np.where(dp < 0, np.minimum(1.0, -2.0 * (umax - u0) / dp), 1.0),
        )
        eps_m = np.where(
            dm > 0, np.minimum(1.0, 2.0 * (umax - u0) / dm),
            np.where(dm < 0, np.minimum(1.0, -2.0 * u0 / dm), 1.0),
        )
    return np.stack([eps_m, eps_p])


def _pfc_scaled(ext: np.ndarray, umax: float, limiters=None, stacked: bool = False):
    if limiters is None:
        limiters = _pfc_limiters(ext[..., :1] if stacked else ext, umax)
    u0 = ext[1:-1]
    a = limiters[1] * (ext[2:] - u0)
    b = limiters[0] * (u0 - ext[:-2])
    out = np.stack([u0 - (a - b) / 24.0, (a + b) / 2.0, a - b])
    return out, limiters


def stencil_radius(kind: str) -> int:
    return {"lagrange0": 0, "lagrange2": 1, "lagrange4": 2, "cweno23": 1, "cweno23z": 1,
            "cweno35": 2, "cwenoz35": 2, "pfc": 1}[kind]


def kind_degree(kind: str) -> int:
    return 2 * stencil_radius(kind)


def _resolve_params(kind: str, params: CwenoParams | None) -> CwenoParams:
    params = params or CwenoParams()
    if kind in ("cweno23z", "cwenoz35") and not params.z_variant:
        params = CwenoParams(params.epsilon, params.p, params.weights, True)
    return params


def scaled_derivatives(ext: np.ndarray, kind: str, dx: float, params=None,
                       frozen=None, umax: float | None = None, stacked: bool = False):
    """Scaled derivatives ``dx^l R^(l)`` along axis 0 of ghost-extended data.

    ``frozen`` reuses nonlinear weights (or PFC limiters) from an earlier call,
    which turns the reconstruction into a linear map of ``ext``. With
    ``stacked`` the last axis indexes several data sets that all share the
    weights computed from the first one.
    Returns ``(scaled, weights)``; ``weights`` is ``None`` for Lagrange.
    """
    k = kind_degree(kind)
    if kind.startswith("lagrange"):
        return _lagrange_scaled(ext, k), None
    if kind == "pfc":
        if umax is None:
            umax = float(np.max(ext))
        return _pfc_scaled(ext, umax, frozen, stacked)
    params = _resolve_params(kind, params)
    return _cweno_scaled(ext, k, params, params.resolved_epsilon(dx), frozen, stacked)


def build_coeffs(
    values,
    dx: float,
    kind: str = "cweno23",
    policy: BoundaryPolicy | str = BoundaryPolicy.PERIODIC,
    params: CwenoParams | None = None,
    pad: int = 0,
    x_min: float = 0.0,
) -> ReconCoeffs1D:
    """Array-level entry point behind every ``basic_*`` reconstruction."""
    if kind not in KINDS:
        raise ValueError(f"unknown reconstruction kind {kind!r}; expected one of {KINDS}")
    policy = BoundaryPolicy.parse(policy)
    values = np.asarray(values, dtype=float)
    n = values.size
    r = stencil_radius(kind)
    k = 2 * r
    if n <= k:
        raise ValueError(f"{kind} needs more than {k} cells, got {n}")
    if policy is BoundaryPolicy.PERIODIC:
        pad = 0
    ext = ghost_extend(values, policy, pad + r)
    grid = Grid1D(n, x_min, x_min + n * dx)
    if kind == "pfc" and np.any(values <= 0):
        raise ValueError("PFC reconstruction requires strictly positive cell averages")
    scaled, weights = scaled_derivatives(ext, kind, dx, params, umax=float(np.max(values)))
    table = scaled / (dx ** np.arange(k + 1))[:, None]
    return ReconCoeffs1D(k, grid, table, policy, pad, weights)


def _field_args(field) -> tuple[np.ndarray, float, float]:
    if isinstance(field, CellField1D):
        return field.values, field.grid.dx, field.grid.x_min
    raise TypeError("expected a CellField1D")


def basic_lagrange(field: CellField1D, k: int, policy=BoundaryPolicy.PERIODIC, pad: int = 0):
    """Symmetric-stencil polynomial of even degree ``k`` matching ``k + 1`` cell averages."""
    if k not in (0, 2, 4):
        raise ValueError(f"lagrange degree must be 0, 2 or 4, got {k}")
    v, dx, x0 = _field_args(field)
    return build_coeffs(v, dx, f"lagrange{k}", policy, pad=pad, x_min=x0)


def basic_cweno23(field: CellField1D, params: CwenoParams | None = None,
                  policy=BoundaryPolicy.PERIODIC, pad: int = 0):
    v, dx, x0 = _field_args(field)
    kind = "cweno23z" if params is not None and params.z_variant else "cweno23"
    return build_coeffs(v, dx, kind, policy, params, pad, x0)


def basic_cweno35(field: CellField1D, params: CwenoParams | None = None,
                  policy=BoundaryPolicy.PERIODIC, pad: int = 0):
    v, dx, x0 = _field_args(field)
    kind = "cwenoz35" if params is not None and params.z_variant else "cweno35"
    return build_coeffs(v, dx, kind, policy, params, pad, x0)


def basic_pfc(field: CellField1D, policy=BoundaryPolicy.PERIODIC, pad: int = 0):
    """Positive flux conservative parabola with slope limiters."""
    v, dx, x0 = _field_args(field)
    return build_coeffs(v, dx, "pfc", policy, pad=pad, x_min=x0)


# }}}


# {{{ sliding-average evaluation


def _q_columns(coeffs: ReconCoeffs1D, cells, theta: float) -> np.ndarray:
    _check_theta(theta)
    scaled = coeffs.scaled()
    left = scaled[:, coeffs.columns(cells)]
    right = scaled[:, coeffs.columns(np.asarray(cells) + 1)]
    a = np.array([alpha_coeff(ell, theta) for ell in range(coeffs.k + 1)])
    b = np.array([beta_coeff(ell, theta) for ell in range(coeffs.k + 1)])
    return a @ left + b @ right


def q_eval(coeffs: ReconCoeffs1D, i: int, theta: float) -> float:
    """Sliding average over ``[x_{i-1/2} + theta dx, x_{i+1/2} + theta dx]``."""
    return float(_q_columns(coeffs, np.array([i]), theta)[0])


def q_shifted_values(coeffs: ReconCoeffs1D, shift: ShiftQuery) -> np.ndarray:
    cells = np.arange(coeffs.n) + shift.offset
    return _q_columns(coeffs, cells, shift.theta)


def q_shifted_field(coeffs: ReconCoeffs1D, shift: ShiftQuery) -> CellField1D:
    """``out[i] = Q`` at base cell ``i + offset`` with fraction ``theta``."""
    return CellField1D(coeffs.grid, q_shifted_values(coeffs, shift))


# }}}


# {{{ reconstruction selector


@dataclass(frozen=True)
class Reconstruction:
    """A named basic reconstruction plus its parameters.

    ``shift`` returns, for every cell, the sliding average of the
    reconstruction centred at ``x_i + displacement``.
    """

    kind: str = "cweno23"
    params: CwenoParams | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown reconstruction kind {self.kind!r}")

    @property
    def degree(self) -> int:
        return kind_degree(self.kind)

    @property
    def conservative(self) -> bool:
        return True

    def coefficients(self, values, dx, policy=BoundaryPolicy.PERIODIC, pad=0) -> ReconCoeffs1D:
        return build_coeffs(values, dx, self.kind, policy, self.params, pad)

    def shift(self, values, dx: float, displacement: float,
              policy=BoundaryPolicy.PERIODIC) -> np.ndarray:
        values = np.asarray(values, dtype=float)
        policy = BoundaryPolicy.parse(policy)
        q = decompose_shift(displacement, dx)
        if q.offset == 0 and q.theta == 0.0:
            return values.copy()
        n = values.size
        if policy is BoundaryPolicy.FREEFLOW and abs(q.offset) > n:
            raise OutOfDomainError(f"shift of {q.offset} cells exceeds the {n}-cell domain")
        pad = max(abs(q.offset), abs(q.offset + 1))
        coeffs = self.coefficients(values, dx, policy, pad)
        out = q_shifted_values(coeffs, q)
        if not np.all(np.isfinite(out)):
            raise NumericalError("non-finite value in reconstruction")
        return out


def as_reconstruction(recon) -> Reconstruction:
    """Accept a kind name, a ``Reconstruction`` or a point-interpolation comparator."""
    if isinstance(recon, str):
        from slrecon import pointinterp

        if recon in pointinterp.KINDS:
            return pointinterp.PointInterpolation(recon)
        return Reconstruction(recon)
    if hasattr(recon, "shift"):
        return recon
    raise TypeError(f"cannot interpret {recon!r} as a reconstruction")


# }}}

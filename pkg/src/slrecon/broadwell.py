"""Semi-Lagrangian DIRK and BDF solvers for the 1D Broadwell model.

    f_t + f_x = Q / kappa,   g_t - g_x = Q / kappa,   h_t = -Q / kappa,
    Q = h^2 - f g.

``f`` is transported to the right, ``g`` to the left and ``h`` stays put.
Each implicit stage reduces to a closed-form scalar solve per cell because
``f + h`` and ``g + h`` are unaffected by the collision term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from slrecon.core import BoundaryPolicy, CellField1D, Grid1D, NumericalError
from slrecon.recon1d import as_reconstruction
from slrecon.timeint import TABLES, BdfCoeffs, ButcherTable, bdf_coeffs, startup_table
from slrecon.xinjin import step_count


@dataclass(frozen=True)
class BroadwellState:
    """Kinetic densities at one time level.

    ``relax`` caches ``Q / kappa`` from the last implicit stage;
    ``history`` holds earlier ``(f, g, h)`` levels, newest first.
    """

    f: CellField1D
    g: CellField1D
    h: CellField1D
    kappa: float
    t: float = 0.0
    relax: np.ndarray | None = field(default=None, repr=False)
    history: tuple = field(default=(), repr=False)

    def __post_init__(self) -> None:
        if not self.kappa > 0:
            raise ValueError("kappa must be positive")
        if not self.f.grid == self.g.grid == self.h.grid:
            raise ValueError("f, g, h must share a grid")

    @property
    def grid(self) -> Grid1D:
        return self.f.grid

    def collision(self) -> np.ndarray:
        """``Q = h^2 - f g``."""
        return self.h.values**2 - self.f.values * self.g.values

    def relaxation_rate(self) -> np.ndarray:
        return self.collision() / self.kappa if self.relax is None else self.relax


def moments(state: BroadwellState) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(rho, m, z) = (f + 2h + g, f - g, f + g)``."""
    f, g, h = state.f.values, state.g.values, state.h.values
    return f + 2.0 * h + g, f - g, f + g


def from_moments(grid: Grid1D, rho, m, z, kappa: float, t: float = 0.0) -> BroadwellState:
    rho, m, z = (np.asarray(a, dtype=float) for a in (rho, m, z))
    return BroadwellState(CellField1D(grid, 0.5 * (z + m)), CellField1D(grid, 0.5 * (z - m)),
                          CellField1D(grid, 0.5 * (rho - z)), kappa, t)


def equilibrium_z(rho, m):
    """``z_E = (rho^2 + m^2) / (2 rho)``; requires ``rho > 0``."""
    rho = np.asarray(rho, dtype=float)
    if np.any(rho <= 0):
        raise NumericalError("non-positive density in the equilibrium map")
    return (rho**2 + np.asarray(m) ** 2) / (2.0 * rho)


def stage_solve_hfg(F_hat, G_hat, H_hat, w):
    """Solve ``f = F + wQ``, ``g = G + wQ``, ``h = H - wQ`` with ``Q = h^2 - f g``.

    ``Q`` is linear in the unknown ``q = wQ``, which gives the closed form
    ``h = (w (H+F)(H+G) + H) / (w (G+2H+F) + 1)``.
    """
    F, G, H = (np.asarray(a, dtype=float) for a in (F_hat, G_hat, H_hat))
    denom = 1.0 + w * (G + 2.0 * H + F)
    if np.any(np.abs(denom) < 1e-300) or not np.all(np.isfinite(denom)):
        raise NumericalError("vanishing denominator in the Broadwell stage solve")
    h = (w * (H + F) * (H + G) + H) / denom
    return H + F - h, H + G - h, h


def _stage_source(F, G, H, diag: float, dt_over_kappa: float):
    """``(dt/kappa) Q`` at the stage solution, without dividing by ``diag``."""
    return (H * H - F * G) * dt_over_kappa / (1.0 + diag * dt_over_kappa * (G + 2.0 * H + F))


def _advance(state: BroadwellState, f, g, h, relax, dt, max_history: int = 2) -> BroadwellState:
    if not all(np.all(np.isfinite(a)) for a in (f, g, h)):
        raise NumericalError(f"non-finite Broadwell solution at t={state.t + dt:.6g}")
    grid = state.grid
    hist = ((state.f.values, state.g.values, state.h.values),) + state.history[: max_history - 1]
    return replace(state, f=CellField1D(grid, f), g=CellField1D(grid, g), h=CellField1D(grid, h),
                   t=state.t + dt, relax=relax, history=hist)


def broadwell_dirk_step(state: BroadwellState, table: ButcherTable, dt: float,
                        recon="cweno23", policy=BoundaryPolicy.PERIODIC) -> BroadwellState:
    if not dt > 0:
        raise ValueError("dt must be positive")
    recon = as_reconstruction(recon)
    dx = state.grid.dx

    def shift(arr, d):
        return recon.shift(arr, dx, d, policy)

    a, c = table.A, table.c
    dtk = dt / state.kappa
    f0, g0, h0 = state.f.values, state.g.values, state.h.values
    # ss[l] = (dt / kappa) Q^(l)
    ss = []
    f = g = h = s = None
    for k in range(table.stages):
        F = shift(f0, -c[k] * dt)
        G = shift(g0, c[k] * dt)
        H = h0.copy()
        for ell in range(k):
            if a[k, ell] == 0.0:
                continue
            d = (c[k] - c[ell]) * dt
            F = F + a[k, ell] * shift(ss[ell], -d)
            G = G + a[k, ell] * shift(ss[ell], d)
            H = H - a[k, ell] * ss[ell]
        if a[k, k] == 0.0:
            f, g, h = F, G, H
            s = dt * state.relaxation_rate() if k == 0 and c[0] == 0.0 else dtk * (h * h - f * g)
        else:
            f, g, h = stage_solve_hfg(F, G, H, a[k, k] * dtk)
            s = _stage_source(F, G, H, a[k, k], dtk)
        ss.append(s)
    return _advance(state, f, g, h, s / dt, dt)


def broadwell_bdf_step(state: BroadwellState, coeffs: BdfCoeffs, dt: float,
                       recon="cweno23", policy=BoundaryPolicy.PERIODIC) -> BroadwellState:
    if len(state.history) < coeffs.steps - 1:
        raise ValueError(f"BDF{coeffs.order} needs {coeffs.steps - 1} history levels, "
                         f"have {len(state.history)}")
    recon = as_reconstruction(recon)
    dx = state.grid.dx
    levels = [(state.f.values, state.g.values, state.h.values)] + list(state.history[: coeffs.steps - 1])
    F = G = H = 0.0
    for k, (alpha, (fk, gk, hk)) in enumerate(zip(coeffs.alpha, levels), start=1):
        F = F + alpha * recon.shift(fk, dx, -k * dt, policy)
        G = G + alpha * recon.shift(gk, dx, k * dt, policy)
        H = H + alpha * hk
    dtk = coeffs.beta * dt / state.kappa
    f, g, h = stage_solve_hfg(F, G, H, dtk)
    relax = _stage_source(F, G, H, 1.0, dtk) / (coeffs.beta * dt)
    return _advance(state, f, g, h, relax, dt, max_history=max(2, coeffs.steps))


def relaxation_limit_step(state: BroadwellState, dt: float | None = None,
                          policy=BoundaryPolicy.PERIODIC) -> BroadwellState:
    """The ``kappa -> 0``, ``dt = dx`` limit: a relaxation scheme projected to equilibrium."""
    dx = state.grid.dx
    if dt is not None and not math.isclose(dt, dx, rel_tol=1e-12):
        raise ValueError("the relaxation-limit oracle requires dt = dx")
    policy = BoundaryPolicy.parse(policy)
    rho, m, z = moments(state)

    def nb(a):
        if policy is BoundaryPolicy.PERIODIC:
            return np.roll(a, 1), np.roll(a, -1)
        return np.insert(a[:-1], 0, a[0]), np.append(a[1:], a[-1])

    (mm, mp), (zm, zp) = nb(m), nb(z)
    rho1 = rho - 0.5 * (mp - mm) + 0.5 * (zp - 2.0 * z + zm)
    m1 = 0.5 * (mp + mm) - 0.5 * (zp - zm)
    z1 = equilibrium_z(rho1, m1)
    new = from_moments(state.grid, rho1, m1, z1, state.kappa, state.t + dx)
    return new


def solve(state: BroadwellState, tfinal: float, dt: float, integrator: str = "dirk2",
          recon="cweno23", policy=BoundaryPolicy.PERIODIC, callback=None) -> BroadwellState:
    """Integrate over ``tfinal``; BDF history is bootstrapped with a matching-order DIRK."""
    nsteps, dt = step_count(tfinal, dt)
    startup = 0
    if integrator in TABLES:
        table = TABLES[integrator]()
    elif integrator in ("bdf2", "bdf3"):
        coeffs = bdf_coeffs(int(integrator[-1]))
        table = startup_table(coeffs.order)
        startup = coeffs.steps - 1
    else:
        raise ValueError(f"unknown integrator {integrator!r}")
    state = replace(state, history=())
    for n in range(nsteps):
        if integrator in TABLES or n < startup:
            state = broadwell_dirk_step(state, table, dt, recon, policy)
        else:
            state = broadwell_bdf_step(state, coeffs, dt, recon, policy)
        if callback is not None:
            callback(state)
    return state

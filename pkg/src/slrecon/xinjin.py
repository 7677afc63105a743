"""Semi-Lagrangian DIRK and BDF solvers for the Xin-Jin relaxation system.

    u_t + sum_d dv/dx_d = 0,    v_t + sum_d du/dx_d = (F(u) - v) / kappa

In diagonal variables ``g = u + v`` travels along ``+1`` (every axis) and
``f = u - v`` along ``-1``; the stiff source ``+-K/kappa`` with
``K = F(u) - v`` enters each with opposite sign, so ``u = (f + g) / 2`` is
updated explicitly and ``v`` by a scalar linear solve per cell.

Values are point values at cell centers; the conservative sliding-average
operator supplies the shifted values at characteristic feet.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from slrecon.core import BoundaryPolicy, CellField1D, CellField2D, NumericalError
from slrecon.recon1d import as_reconstruction
from slrecon.recon2d import shift_2d
from slrecon.timeint import BdfCoeffs, ButcherTable, TABLES, bdf_coeffs, startup_table


class SubcharacteristicWarning(UserWarning):
    """``max |F'(u)|`` exceeds the characteristic speed."""


def burgers_flux(u):
    return 0.5 * u * u


def burgers_flux_prime(u):
    return u


@dataclass(frozen=True)
class XinJinState:
    """Solution at one time level.

    ``relax`` caches ``(F(u) - v) / kappa``; it is recovered stably from the
    implicit stage of the previous step instead of dividing a tiny difference
    by a tiny ``kappa``. ``history`` holds earlier ``(u, v)`` levels, newest first.
    """

    u: CellField1D | CellField2D
    v: CellField1D | CellField2D
    kappa: float
    t: float = 0.0
    flux: Callable = field(default=burgers_flux, repr=False)
    flux_prime: Callable | None = field(default=burgers_flux_prime, repr=False)
    relax: np.ndarray | None = field(default=None, repr=False)
    history: tuple = field(default=(), repr=False)

    def __post_init__(self) -> None:
        if not self.kappa > 0:
            raise ValueError("kappa must be positive")
        if self.u.grid != self.v.grid:
            raise ValueError("u and v must share a grid")

    @property
    def grid(self):
        return self.u.grid

    @property
    def ndim(self) -> int:
        return 2 if isinstance(self.u, CellField2D) else 1

    @property
    def f(self) -> np.ndarray:
        return self.u.values - self.v.values

    @property
    def g(self) -> np.ndarray:
        return self.u.values + self.v.values

    def relaxation_rate(self) -> np.ndarray:
        if self.relax is not None:
            return self.relax
        return (self.flux(self.u.values) - self.v.values) / self.kappa

    def subcharacteristic_ok(self) -> bool:
        if self.flux_prime is None:
            return True
        return bool(np.max(np.abs(self.flux_prime(self.u.values))) <= 1.0 + 1e-12)


XinJin2DState = XinJinState


def _field_like(state: XinJinState, values):
    cls = CellField2D if state.ndim == 2 else CellField1D
    return cls(state.grid, values)


def _shifter(state: XinJinState, recon, policy):
    """``shift(arr, d)``: values at ``x + d`` (diagonally ``(x + d, y + d)`` in 2D)."""
    policy = BoundaryPolicy.parse(policy)
    g = state.grid
    if state.ndim == 1:
        recon = as_reconstruction(recon)
        return lambda arr, d: recon.shift(arr, g.dx, d, policy)
    recon = as_reconstruction(recon)
    return lambda arr, d: shift_2d(arr, g.dx, g.dy, d, d, recon, policy)


def _advance(state: XinJinState, u, v, relax, dt, max_history: int = 2) -> XinJinState:
    if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))):
        raise NumericalError(f"non-finite solution at t={state.t + dt:.6g}")
    hist = ((state.u.values, state.v.values),) + state.history[: max_history - 1]
    new = replace(state, u=_field_like(state, u), v=_field_like(state, v),
                  t=state.t + dt, relax=relax, history=hist)
    if not new.subcharacteristic_ok():
        warnings.warn("subcharacteristic condition max|F'(u)| <= 1 violated",
                      SubcharacteristicWarning, stacklevel=3)
    return new


def xinjin_dirk_step(state: XinJinState, table: ButcherTable, dt: float,
                     recon="cweno23", policy=BoundaryPolicy.PERIODIC) -> XinJinState:
    """One step of an L-stable, stiffly accurate DIRK scheme along characteristics."""
    if not dt > 0:
        raise ValueError("dt must be positive")
    shift = _shifter(state, recon, policy)
    f, g = state.f, state.g
    a, c = table.A, table.c
    kappa = state.kappa
    # ys[l] = (dt / kappa) * K^(l), the scaled stage relaxation terms
    ys = []
    u = v = y = None
    for k in range(table.stages):
        gt = shift(g, -c[k] * dt)
        ft = shift(f, c[k] * dt)
        u = 0.5 * (gt + ft)
        e = 0.5 * (gt - ft)
        for ell in range(k):
            if a[k, ell] == 0.0:
                continue
            d = (c[k] - c[ell]) * dt
            yg = shift(ys[ell], -d)
            yf = shift(ys[ell], d)
            u = u + 0.5 * a[k, ell] * (yg - yf)
            e = e + 0.5 * a[k, ell] * (yg + yf)
        if a[k, k] == 0.0:
            # explicit stage: only the first stage of a table with c = 0
            v = e
            y = dt * state.relaxation_rate() if k == 0 and c[0] == 0.0 else dt / kappa * (state.flux(u) - v)
        else:
            w = a[k, k] * dt / kappa
            v = (e + w * state.flux(u)) / (1.0 + w)
            y = (state.flux(u) - e) / (kappa / dt + a[k, k])
        ys.append(y)
    return _advance(state, u, v, y / dt, dt)


def xinjin_bdf_step(state: XinJinState, coeffs: BdfCoeffs, dt: float,
                    recon="cweno23", policy=BoundaryPolicy.PERIODIC) -> XinJinState:
    """One BDF step; ``state.history`` must hold ``order - 1`` earlier levels at spacing ``dt``."""
    if len(state.history) < coeffs.steps - 1:
        raise ValueError(f"BDF{coeffs.order} needs {coeffs.steps - 1} history levels, "
                         f"have {len(state.history)}")
    shift = _shifter(state, recon, policy)
    levels = [(state.u.values, state.v.values)] + list(state.history[: coeffs.steps - 1])
    su = 0.0
    se = 0.0
    for k, (alpha, (uk, vk)) in enumerate(zip(coeffs.alpha, levels), start=1):
        gt = shift(uk + vk, -k * dt)
        ft = shift(uk - vk, k * dt)
        su = su + 0.5 * alpha * (gt + ft)
        se = se + 0.5 * alpha * (gt - ft)
    fu = state.flux(su)
    bdt = coeffs.beta * dt
    v = (state.kappa * se + bdt * fu) / (state.kappa + bdt)
    relax = (fu - se) / (state.kappa + bdt)
    return _advance(state, su, v, relax, dt, max_history=max(2, coeffs.steps))


def lax_friedrichs_step(u: CellField1D, flux: Callable = burgers_flux, dt: float | None = None,
                        policy=BoundaryPolicy.PERIODIC) -> CellField1D:
    """Lax-Friedrichs update at ``dt = dx`` (unit characteristic speed)."""
    if dt is not None and not math.isclose(dt, u.grid.dx, rel_tol=1e-12):
        raise ValueError("the Lax-Friedrichs oracle requires dt = dx")
    policy = BoundaryPolicy.parse(policy)
    vals = u.values
    if policy is BoundaryPolicy.PERIODIC:
        up, um = np.roll(vals, -1), np.roll(vals, 1)
    else:
        up = np.append(vals[1:], vals[-1])
        um = np.insert(vals[:-1], 0, vals[0])
    return CellField1D(u.grid, 0.5 * (up + um) - 0.5 * (flux(up) - flux(um)))


def equilibrium_state(u: CellField1D | CellField2D, kappa: float, **kw) -> XinJinState:
    """State with ``v = F(u)``."""
    flux = kw.get("flux", burgers_flux)
    return XinJinState(u, type(u)(u.grid, flux(u.values)), kappa, **kw)


def step_count(tfinal: float, dt: float) -> tuple[int, float]:
    """Whole number of steps reaching ``tfinal`` with a step no larger than ``dt``."""
    if not tfinal > 0 or not dt > 0:
        raise ValueError("tfinal and dt must be positive")
    n = max(1, math.ceil(tfinal / dt - 1e-9))
    return n, tfinal / n


def solve(state: XinJinState, tfinal: float, dt: float, integrator: str = "dirk2",
          recon="cweno23", policy=BoundaryPolicy.PERIODIC, callback=None) -> XinJinState:
    """Integrate to ``state.t + tfinal``; BDF history is bootstrapped with a DIRK of the same order.

    ``callback(state)`` is invoked after every step.
    """
    nsteps, dt = step_count(tfinal, dt)
    if integrator in TABLES:
        table = TABLES[integrator]()
        stepper = lambda s: xinjin_dirk_step(s, table, dt, recon, policy)  # noqa: E731
        startup = 0
    elif integrator in ("bdf2", "bdf3"):
        coeffs = bdf_coeffs(int(integrator[-1]))
        boot = startup_table(coeffs.order)
        stepper = lambda s: xinjin_bdf_step(s, coeffs, dt, recon, policy)  # noqa: E731
        startup = coeffs.steps - 1
    else:
        raise ValueError(f"unknown integrator {integrator!r}")
    state = replace(state, history=())
    for n in range(nsteps):
        if n < startup:
            state = xinjin_dirk_step(state, boot, dt, recon, policy)
        else:
            state = stepper(state)
        if callback is not None:
            callback(state)
    return state

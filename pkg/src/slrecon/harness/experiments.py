"""Experiment drivers: conservation sweeps, convergence studies and shock runs."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from slrecon import broadwell, xinjin
from slrecon.core import BoundaryPolicy, CellField1D, Grid1D, Grid2D, NumericalError, ghost_extend
from slrecon.recon1d import CwenoParams, Reconstruction, as_reconstruction
from slrecon.recon2d import shift_2d
from slrecon.harness import initdata
from slrecon.harness.config import ConfigError, RunConfig

THETAS = np.arange(1000) / 1000.0
BREAKING_TIME = 5.0 / math.pi


@dataclass(frozen=True)
class ConvergenceReport:
    sizes: tuple[int, ...]
    errors: np.ndarray
    norm: str = "l1"

    @property
    def orders(self) -> np.ndarray:
        e = np.asarray(self.errors, dtype=float)
        n = np.asarray(self.sizes, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.log(e[:-1] / e[1:]) / np.log(n[1:] / n[:-1])

    def min_order(self) -> float:
        return float(np.min(self.orders))

    def max_order(self) -> float:
        return float(np.max(self.orders))


@dataclass(frozen=True)
class ConservationSeries:
    t: np.ndarray
    e_con: np.ndarray

    def max(self) -> float:
        return float(np.max(self.e_con)) if len(self.e_con) else 0.0


@dataclass(frozen=True)
class SweepReport:
    function: str
    recon: str
    err: float
    min_value: float
    max_input: float


@dataclass
class RunResult:
    state: object
    series: ConservationSeries
    shock_position: float | None = None


def make_reconstruction(config: RunConfig):
    params = None
    if config.epsilon is not None or config.p != 2:
        params = CwenoParams(epsilon=config.epsilon, p=config.p)
    rec = as_reconstruction(config.recon)
    if params is not None and isinstance(rec, Reconstruction):
        rec = Reconstruction(rec.kind, params)
    return rec


# {{{ reconstruction experiments


def run_conservation_sweep(config: RunConfig) -> SweepReport:
    """Max over the theta grid of the relative change of the shifted sum."""
    func = initdata.TEST_FUNCTIONS[config.init]
    n = config.n[0]
    grid = Grid1D(n, -1.0, 1.0)
    u = func(grid.centers)
    rec = make_reconstruction(config)
    total = float(np.sum(u))
    err = 0.0
    lowest = math.inf
    for theta in THETAS:
        q = rec.shift(u, grid.dx, theta * grid.dx, BoundaryPolicy.PERIODIC)
        err = max(err, abs(float(np.sum(q)) - total) / total)
        lowest = min(lowest, float(np.min(q)))
    return SweepReport(config.init, config.recon, err, lowest, float(np.max(u)))


def run_recon_convergence(config: RunConfig) -> ConvergenceReport:
    """Shifted sliding averages of ``sin(2 pi x)`` (1D, max norm) or of the product sine (2D, L1).

    The 2D case shifts by ``(theta, 1 - theta)`` cells.
    """
    rec = make_reconstruction(config)
    theta = config.theta
    errors = []
    for n in config.n:
        if config.init == "sine":
            grid = Grid1D(n, 0.0, 1.0)
            x, dx = grid.centers, grid.dx
            out = rec.shift(initdata.sine_average(x, dx), dx, theta * dx)
            errors.append(np.max(np.abs(out - initdata.sine_average(x + theta * dx, dx))))
        else:
            grid = Grid2D(n, n, 0.0, 1.0, 0.0, 1.0)
            x, y = grid.meshgrid()
            dx = grid.dx
            eta = 1.0 - theta if theta > 0 else 0.0
            u = initdata.sine_average(x, dx) * initdata.sine_average(y, dx)
            out = shift_2d(u, dx, dx, theta * dx, eta * dx, rec)
            exact = initdata.sine_average(x + theta * dx, dx) * initdata.sine_average(y + eta * dx, dx)
            errors.append(np.sum(np.abs(out - exact)) * dx * dx)
    return ConvergenceReport(tuple(config.n), np.array(errors), "max" if config.init == "sine" else "l1")


# }}}


# {{{ solver runs


def _solver_module(config: RunConfig):
    return broadwell if config.experiment == "broadwell" else xinjin


def _conserved(config: RunConfig, state) -> tuple[np.ndarray, np.ndarray]:
    """Conserved density and its flux: ``(u, v)`` for Xin-Jin, ``(rho, m)`` for Broadwell."""
    if config.experiment == "broadwell":
        rho, m, _ = broadwell.moments(state)
        return rho, m
    return state.u.values, state.v.values


def _cell_volume(state) -> float:
    g = state.grid
    return g.dx * g.dy if isinstance(g, Grid2D) else g.dx


def run_solver(config: RunConfig, n: int, record: bool = False) -> RunResult:
    """Run one grid; with ``record`` collect the relative conservation error per step.

    Under free-flow boundaries in 1D the error is corrected by the boundary
    flux ``(flux_left - flux_right) t`` of the constant far-field states.
    """
    if config.n2 is not None and config.n2 != n:
        raise ConfigError("rectangular 2D grids are not supported; omit n2 or set n2 = n")
    state = initdata.initial_state(config.experiment, config.init, n, config.kappa)
    rec = make_reconstruction(config)
    vol = _cell_volume(state)
    q0, p0 = _conserved(config, state)
    mass0 = float(np.sum(q0)) * vol
    boundary_flux = 0.0
    if config.policy is BoundaryPolicy.FREEFLOW and q0.ndim == 1:
        boundary_flux = float(p0[0] - p0[-1])
    ts, es = [], []

    def monitor(s):
        q, _ = _conserved(config, s)
        ts.append(s.t)
        es.append(abs(float(np.sum(q)) * vol - mass0 - boundary_flux * s.t) / abs(mass0))

    dt = config.cfl * state.grid.dx
    try:
        final = _solver_module(config).solve(state, config.tfinal, dt, config.integrator, rec,
                                             config.policy, monitor if record else None)
    except NumericalError as exc:
        raise NumericalError(f"N={n}: {exc}") from exc
    result = RunResult(final, ConservationSeries(np.array(ts), np.array(es)))
    if config.experiment == "xinjin1d" and config.init == "step":
        try:
            result.shock_position = detect_shock_position(final.u, 0.9, 0.0)
        except ValueError:
            result.shock_position = None
    return result


def _restrict_axis(values: np.ndarray, policy, axis: int) -> np.ndarray:
    """Fine point values to coarse centers: 6-point midpoint interpolation."""
    ext = ghost_extend(values, policy, 3, axis=axis)
    n = values.shape[axis]

    def sl(k):
        return np.take(ext, np.arange(3 + k, 3 + k + n, 2), axis=axis)

    return (150.0 * (sl(0) + sl(1)) - 25.0 * (sl(-1) + sl(2)) + 3.0 * (sl(-2) + sl(3))) / 256.0


def restrict(values: np.ndarray, policy=BoundaryPolicy.PERIODIC) -> np.ndarray:
    out = values
    for axis in range(values.ndim):
        out = _restrict_axis(out, policy, axis)
    return out


def _solution_arrays(config: RunConfig, state) -> list[np.ndarray]:
    if config.experiment == "broadwell":
        return list(broadwell.moments(state))
    return [state.u.values]


def run_convergence(config: RunConfig) -> ConvergenceReport:
    """Errors against the doubled-resolution run, summed over the reported fields."""
    if len(config.n) < 3:
        raise ConfigError("a convergence study needs at least three grid sizes")
    if config.experiment == "xinjin1d" and config.init == "smooth" and config.tfinal >= BREAKING_TIME:
        raise ConfigError(f"tfinal must stay below the breaking time {BREAKING_TIME:.4f}")
    sizes = sorted(set(config.n) | {2 * n for n in config.n})
    runs = {n: run_solver(config, n).state for n in sizes}
    errors = []
    for n in config.n:
        coarse = _solution_arrays(config, runs[n])
        fine = _solution_arrays(config, runs[2 * n])
        vol = _cell_volume(runs[n])
        errors.append(sum(np.sum(np.abs(c - restrict(f, config.policy))) * vol
                          for c, f in zip(coarse, fine)))
    return ConvergenceReport(tuple(config.n), np.array(errors))


def detect_shock_position(field: CellField1D, u_left: float, u_right: float) -> float:
    """First crossing of the mid value, linearly interpolated between cell centers."""
    mid = 0.5 * (u_left + u_right)
    vals = field.values - mid
    x = field.grid.centers
    for i in range(len(vals) - 1):
        a, b = vals[i], vals[i + 1]
        if a == 0.0:
            return float(x[i])
        if a * b < 0.0 or b == 0.0:
            return float(x[i] + (x[i + 1] - x[i]) * a / (a - b))
    raise ValueError("no crossing of the mid value")


def run_shock(config: RunConfig) -> RunResult:
    return run_solver(config, config.n[0], record=True)


# }}}


def run_contrast(config: RunConfig, recon: str = "pweno4") -> RunResult:
    """Same run with a point-interpolation comparator in place of the conservative operator."""
    return run_shock(replace(config, recon=recon))

"""Named initial data and test functions of the numerical experiments."""

from __future__ import annotations

import numpy as np

from slrecon.broadwell import BroadwellState, equilibrium_z, from_moments
from slrecon.core import CellField1D, CellField2D, Grid1D, Grid2D
from slrecon.xinjin import XinJinState

# {{{ reconstruction test functions (sampled at cell centers on [-1, 1])


def ubar1(x):
    return 4.0 + np.sin(2 * np.pi * x) + np.cos(2 * np.pi * x)


def ubar2(x):
    s = 2.0 * np.sin(np.pi * (x - 0.5)) ** 2
    return np.where((x >= 0.0) & (x < 0.5), 3.0 - s, 3.0 + s)


def ubar3(x):
    return np.where((x >= -0.5) & (x <= 0.4), 1e-5 + 0.1 * (1.0 + np.sin(np.pi * x)), 1e-5)


TEST_FUNCTIONS = {"u1": ubar1, "u2": ubar2, "u3": ubar3}


def sine_average(x, dx):
    """Exact cell average of ``sin(2 pi x)`` over ``[x - dx/2, x + dx/2]``."""
    return (np.cos(2 * np.pi * (x - dx / 2)) - np.cos(2 * np.pi * (x + dx / 2))) / (2 * np.pi * dx)


# }}}


# {{{ Xin-Jin


def xinjin_smooth(n: int, kappa: float) -> XinJinState:
    """``u = 0.7 + 0.2 sin(pi x)`` with ``v`` prepared to first order in ``kappa``."""
    grid = Grid1D(n, -1.0, 1.0)
    x = grid.centers
    u = 0.7 + 0.2 * np.sin(np.pi * x)
    ux = 0.2 * np.pi * np.cos(np.pi * x)
    v = 0.5 * u * u + kappa * (u * u - 1.0) * ux
    return XinJinState(CellField1D(grid, u), CellField1D(grid, v), kappa)


def xinjin_step(n: int, kappa: float) -> XinJinState:
    grid = Grid1D(n, -1.0, 1.0)
    u = np.where(grid.centers <= 0.0, 0.9, 0.0)
    return XinJinState(CellField1D(grid, u), CellField1D(grid, 0.5 * u * u), kappa)


def xinjin2d_smooth(n: int, kappa: float, prepared: bool = True) -> XinJinState:
    grid = Grid2D(n, n, 0.0, 1.0, 0.0, 1.0)
    x, y = grid.meshgrid()
    sx, sy = np.sin(np.pi * x), np.sin(np.pi * y)
    u = 0.8 * sx**2 * sy**2
    v = 0.5 * u * u
    if prepared:
        ux = 1.6 * np.pi * sx * np.cos(np.pi * x) * sy**2
        uy = 1.6 * np.pi * sy * np.cos(np.pi * y) * sx**2
        v = v + kappa * (u * u - 1.0) * (ux + uy)
    return XinJinState(CellField2D(grid, u), CellField2D(grid, v), kappa)


def xinjin2d_quadrant(n: int, kappa: float) -> XinJinState:
    grid = Grid2D(n, n, -1.0, 1.0, -1.0, 1.0)
    x, y = grid.meshgrid()
    u = np.where(x <= 0, np.where(y <= 0, -0.5, 0.25), np.where(y <= 0, 0.25, 0.5))
    return XinJinState(CellField2D(grid, u), CellField2D(grid, 0.5 * u * u), kappa)


# }}}


# {{{ Broadwell


def broadwell_smooth(n: int, kappa: float, a_rho: float = 0.3, a_u: float = 0.1,
                     length: float = 20.0) -> BroadwellState:
    """Sine data on ``[-20, 20]`` with ``z`` prepared to first order in ``kappa``.

    The first-order correction follows from expanding the ``z`` equation
    about ``z_E``: ``z = z_E - kappa/rho (d_t z_E + d_x m)`` with the time
    derivative replaced through the equilibrium equations.
    """
    grid = Grid1D(n, -length, length)
    x = grid.centers
    k = 2 * np.pi / length
    rho = 1.0 + a_rho * np.sin(k * x)
    u = 0.5 + a_u * np.sin(k * x)
    m = rho * u
    rho_x = a_rho * k * np.cos(k * x)
    m_x = rho_x * u + rho * a_u * k * np.cos(k * x)
    dz_drho = 0.5 - 0.5 * u * u
    dz_dm = u
    h = (1.0 - dz_drho - dz_dm**2) * m_x - dz_drho * dz_dm * rho_x
    return from_moments(grid, rho, m, equilibrium_z(rho, m) - kappa * h / rho, kappa)


def broadwell_riemann(n: int, kappa: float, case: int) -> BroadwellState:
    if case == 1:
        grid, x0 = Grid1D(n, -1.0, 1.0), 0.2
        left, right = (2.0, 1.0, 1.0), (1.0, 0.13962, 1.0)
    elif case == 2:
        grid, x0 = Grid1D(n, 0.0, 1.0), 0.5
        left, right = (1.0, 0.0, 1.0), (0.2, 0.0, 1.0)
    else:
        raise ValueError("Broadwell shock case must be 1 or 2")
    x = grid.centers
    rho, m, z = (np.where(x < x0, a, b) for a, b in zip(left, right))
    return from_moments(grid, rho, m, z, kappa)


# }}}


def initial_state(experiment: str, init: str, n: int, kappa: float):
    if experiment == "xinjin1d":
        return xinjin_smooth(n, kappa) if init == "smooth" else xinjin_step(n, kappa)
    if experiment == "xinjin2d":
        if init == "quadrant":
            return xinjin2d_quadrant(n, kappa)
        return xinjin2d_smooth(n, kappa, prepared=init == "smooth")
    if experiment == "broadwell":
        if init == "smooth":
            return broadwell_smooth(n, kappa)
        return broadwell_riemann(n, kappa, int(init[-1]))
    raise ValueError(f"no solver initial data for {experiment}")

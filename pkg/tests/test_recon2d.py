import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slrecon.core import CellField2D, Grid2D, ShiftQuery
from slrecon.recon1d import KINDS, CwenoParams, Reconstruction, build_coeffs, q_eval
from slrecon.recon2d import (
    basic_2d_separable,
    q_eval_2d,
    q_shifted_field_2d,
    shift_2d,
)


def field2d(values, dx=0.1, dy=0.1):
    nx, ny = values.shape
    return CellField2D(Grid2D(nx, ny, 0.0, nx * dx, 0.0, ny * dy), values)


@pytest.mark.parametrize("kind", ["cweno23", "cweno35", "pfc", "lagrange2"])
def test_constant_field(kind):
    c = basic_2d_separable(field2d(np.full((8, 7), 1.5)), kind)
    np.testing.assert_allclose(c.table[0, 0], 1.5, rtol=1e-14)
    rest = c.table.copy()
    rest[0, 0] = 0.0
    np.testing.assert_allclose(rest, 0.0, atol=1e-9)


@pytest.mark.parametrize("kind, params", [("lagrange2", None), ("cweno23", CwenoParams(epsilon=1e40))])
def test_bilinear_data(kind, params):
    dx, dy = 0.1, 0.2
    g = Grid2D(8, 8, 0.0, 0.8, 0.0, 1.6)
    x, y = g.meshgrid()
    c = basic_2d_separable(CellField2D(g, x * y), kind, params)
    inner = (slice(1, -1), slice(1, -1))
    np.testing.assert_allclose(c.table[1, 1][inner], 1.0, rtol=1e-10)
    np.testing.assert_allclose(c.scaled()[1, 1][inner], dx * dy, rtol=1e-10)
    np.testing.assert_allclose(c.table[2][(slice(None),) + inner], 0.0, atol=1e-8)
    np.testing.assert_allclose(c.table[:, 2][(slice(None),) + inner], 0.0, atol=1e-8)


@pytest.mark.parametrize("kind", KINDS)
def test_per_cell_conservation(kind, rng):
    u = 0.5 + rng.random((10, 9))
    c = basic_2d_separable(field2d(u), kind)
    np.testing.assert_allclose(c.cell_averages(), u, rtol=1e-13)


def test_stencil_exceeding_grid_raises():
    with pytest.raises(ValueError):
        basic_2d_separable(field2d(np.ones((4, 4))), "cweno35")


@pytest.mark.parametrize("kind", ["cweno23", "cweno35", "pfc"])
def test_theta_eta_zero_returns_average(kind, rng):
    u = 1.0 + rng.random((8, 8))
    c = basic_2d_separable(field2d(u), kind)
    for i, j in [(0, 0), (3, 5), (7, 2)]:
        assert q_eval_2d(c, i, j, 0.0, 0.0) == pytest.approx(u[i, j], rel=1e-13)


def test_q_eval_2d_rejects_bad_fraction():
    c = basic_2d_separable(field2d(np.ones((6, 6))))
    with pytest.raises(ValueError):
        q_eval_2d(c, 0, 0, 1.0, 0.2)
    with pytest.raises(ValueError):
        q_eval_2d(c, 0, 0, 0.2, -0.5)


def test_zero_shift_is_identity(rng):
    u = rng.random((6, 7))
    c = basic_2d_separable(field2d(u))
    out = q_shifted_field_2d(c, ShiftQuery(0, 0.0), ShiftQuery(0, 0.0)).values
    np.testing.assert_allclose(out, u, rtol=1e-14)
    np.testing.assert_array_equal(shift_2d(u, 0.1, 0.1, 0.0, 0.0), u)


@pytest.mark.parametrize("kind", ["cweno23", "cweno35", "cwenoz35", "pfc", "lagrange4"])
def test_x_shift_of_y_constant_data_reduces_to_1d(kind, rng):
    row = 1.0 + rng.random(16)
    u = np.repeat(row[:, None], 9, axis=1)
    out = shift_2d(u, 0.1, 0.1, 0.1 * 1.37, 0.0, kind)
    ref = Reconstruction(kind).shift(row, 0.1, 0.1 * 1.37)
    for j in range(9):
        np.testing.assert_allclose(out[:, j], ref, rtol=1e-13)


def test_q_eval_2d_reduction_to_1d(rng):
    row = 1.0 + rng.random(12)
    u = np.repeat(row[:, None], 8, axis=1)
    c2 = basic_2d_separable(field2d(u))
    c1 = build_coeffs(row, 0.1, "cweno23")
    for i in range(12):
        assert q_eval_2d(c2, i, 3, 0.42, 0.0) == pytest.approx(q_eval(c1, i, 0.42), rel=1e-13)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(KINDS), st.floats(-5.0, 5.0), st.floats(-5.0, 5.0))
def test_periodic_2d_shift_conserves_sum(kind, sx, sy):
    i, j = np.meshgrid(np.arange(12), np.arange(10), indexing="ij")
    u = 1.0 + 0.5 * np.sin(1.3 * i + 0.7 * j * j) ** 2
    out = shift_2d(u, 0.1, 0.1, 0.1 * sx, 0.1 * sy, kind)
    assert abs(out.sum() - u.sum()) <= 1e-13 * u.sum()


def test_pfc_2d_positivity(rng):
    worst = np.inf
    for _ in range(50):
        u = rng.random((12, 12)) ** 6 + 1e-12
        t, e = rng.random(2) * 4 - 2
        out = shift_2d(u, 0.1, 0.1, 0.1 * t, 0.1 * e, "pfc")
        worst = min(worst, out.min() / u.max())
    assert worst >= -1e-14


def test_freeflow_2d_far_field():
    u = np.ones((12, 12))
    u[:6] = 2.0
    out = shift_2d(u, 0.1, 0.1, 0.25, -0.25, "cweno23", "freeflow")
    np.testing.assert_allclose(out[0], 2.0, rtol=1e-12)
    np.testing.assert_allclose(out[-1], 1.0, rtol=1e-12)

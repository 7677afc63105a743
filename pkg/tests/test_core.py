import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from slrecon.core import (
    BoundaryPolicy,
    CellField1D,
    CellField2D,
    Grid1D,
    Grid2D,
    ShiftQuery,
    decompose_shift,
    ghost_extend,
)


@pytest.mark.parametrize("ratio, offset, theta", [
    (2.3, 2, 0.3),
    (-0.25, -1, 0.75),
    (0.0, 0, 0.0),
    (-3.0, -3, 0.0),
])
def test_decompose_shift_examples(ratio, offset, theta):
    dx = 0.1
    q = decompose_shift(ratio * dx, dx)
    assert q.offset == offset
    assert q.theta == pytest.approx(theta, abs=1e-12)


def test_decompose_shift_renormalizes_roundoff():
    q = decompose_shift(2.9999999999999996, 1.0)
    assert 0.0 <= q.theta < 1.0
    assert q.offset + q.theta == pytest.approx(3.0)


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_decompose_shift_rejects_non_finite(bad):
    with pytest.raises(ValueError):
        decompose_shift(bad, 1.0)


@given(st.floats(-1e3, 1e3), st.floats(1e-3, 10.0))
def test_decompose_shift_reproduces_displacement(d, dx):
    q = decompose_shift(d, dx)
    assert 0.0 <= q.theta < 1.0
    recon = q.offset * dx + q.theta * dx
    assert abs(recon - d) <= 4 * math.ulp(max(abs(d), abs(q.offset * dx), dx))


def test_shift_query_rejects_theta_one():
    with pytest.raises(ValueError):
        ShiftQuery(0, 1.0)


def test_ghost_extend_examples():
    assert ghost_extend([1, 2, 3], "periodic", 1).tolist() == [3, 1, 2, 3, 1]
    assert ghost_extend([1, 2, 3], BoundaryPolicy.FREEFLOW, 2).tolist() == [1, 1, 1, 2, 3, 3, 3]
    out = ghost_extend([1.0, 2.0, 3.0], "periodic", 0)
    assert out.tolist() == [1.0, 2.0, 3.0]


def test_ghost_extend_accepts_fields():
    grid = Grid1D(3, 0.0, 3.0)
    field = CellField1D(grid, [1.0, 2.0, 3.0])
    assert ghost_extend(field, "freeflow", 1).tolist() == [1, 1, 2, 3, 3]


def test_ghost_extend_along_axis():
    vals = np.arange(6.0).reshape(2, 3)
    out = ghost_extend(vals, "periodic", 1, axis=1)
    assert out.shape == (2, 5)
    np.testing.assert_array_equal(out[:, 0], vals[:, -1])
    np.testing.assert_array_equal(out[:, -1], vals[:, 0])


@given(st.integers(1, 12), st.integers(0, 15), st.integers(0, 15))
def test_periodic_extension_is_translation_consistent(n, w1, w2):
    vals = np.arange(n, dtype=float)
    twice = ghost_extend(ghost_extend(vals, "periodic", w1), "periodic", w2)
    once = ghost_extend(vals, "periodic", w1 + w2)
    # the second pass wraps the extended array; compare on the window it reproduces
    inner = twice[w2 : w2 + n + 2 * w1]
    np.testing.assert_array_equal(inner, once[w2 : w2 + n + 2 * w1])


def test_boundary_policy_parse():
    assert BoundaryPolicy.parse("Periodic") is BoundaryPolicy.PERIODIC
    assert BoundaryPolicy.parse("freeflow") is BoundaryPolicy.FREEFLOW
    with pytest.raises(ValueError):
        BoundaryPolicy.parse("reflect")


def test_grid_centers_and_width():
    g = Grid1D(4, -1.0, 1.0)
    assert g.dx == 0.5
    np.testing.assert_allclose(g.centers, [-0.75, -0.25, 0.25, 0.75])
    with pytest.raises(ValueError):
        Grid1D(4, 1.0, -1.0)
    with pytest.raises(ValueError):
        Grid1D(0, 0.0, 1.0)


def test_grid2d_meshgrid_is_ij():
    g = Grid2D(3, 2, 0.0, 3.0, 0.0, 1.0)
    x, y = g.meshgrid()
    assert x.shape == (3, 2)
    np.testing.assert_allclose(x[:, 0], [0.5, 1.5, 2.5])
    np.testing.assert_allclose(y[0], [0.25, 0.75])


def test_fields_validate_and_are_read_only():
    g = Grid1D(3, 0.0, 1.0)
    with pytest.raises(ValueError):
        CellField1D(g, [1.0, 2.0])
    with pytest.raises(ValueError):
        CellField1D(g, [1.0, np.nan, 2.0])
    f = CellField1D(g, [1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        f.values[0] = 5.0
    with pytest.raises(ValueError):
        CellField2D(Grid2D(2, 2, 0, 1, 0, 1), np.ones((2, 3)))

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slrecon.core import BoundaryPolicy, CellField1D, Grid1D, OutOfDomainError, ShiftQuery
from slrecon.pointinterp import PointInterpolation
from slrecon.recon1d import (
    KINDS,
    CwenoParams,
    Reconstruction,
    alpha_coeff,
    basic_cweno23,
    basic_cweno35,
    basic_lagrange,
    basic_pfc,
    beta_coeff,
    build_coeffs,
    cell_average_weight,
    q_eval,
    q_shifted_field,
    scaled_derivatives,
)
from slrecon.core import ghost_extend


def field(values, x_min=0.0, dx=1.0):
    values = np.asarray(values, dtype=float)
    return CellField1D(Grid1D(values.size, x_min, x_min + values.size * dx), values)


def lagrange_closed_form(u, i, theta, r):
    """Shifted-Lagrange value from the 2r+2 cell averages ``u[i-r .. i+r+1]``."""
    n = u.size
    total = 0.0
    for j in range(2 * r + 2):
        w = 1.0
        for ell in range(2 * r + 2):
            if ell != j:
                w *= (theta + r - ell) / (j - ell)
        total += u[(i - r + j) % n] * w
    return total


# {{{ coefficients


@pytest.mark.parametrize("ell, theta, expected", [
    (0, 0.25, 0.75),
    (1, 0.5, 0.125),
    (2, 0.0, 1 / 24),
])
def test_alpha_examples(ell, theta, expected):
    assert alpha_coeff(ell, theta) == pytest.approx(expected, abs=1e-16)


@pytest.mark.parametrize("ell, theta, expected", [
    (0, 0.25, 0.25),
    (1, 0.5, -0.125),
    (2, 1 - 1e-12, 1 / 24),
])
def test_beta_examples(ell, theta, expected):
    assert beta_coeff(ell, theta) == pytest.approx(expected, abs=1e-12)


def test_beta2_matches_cubic_form():
    t = np.linspace(0, 0.999, 50)
    np.testing.assert_allclose(beta_coeff(2, t), (3 * t - 6 * t**2 + 4 * t**3) / 24, atol=1e-16)


@pytest.mark.parametrize("fn", [alpha_coeff, beta_coeff])
def test_coefficients_reject_bad_input(fn):
    with pytest.raises(ValueError):
        fn(-1, 0.3)
    with pytest.raises(ValueError):
        fn(1, 1.0)


@pytest.mark.parametrize("ell", range(9))
def test_parity_relations(ell):
    t = np.arange(1000) / 1000.0
    s = alpha_coeff(ell, t) + beta_coeff(ell, t)
    expected = 1.0 / (math.factorial(ell + 1) * 2**ell) if ell % 2 == 0 else 0.0
    np.testing.assert_allclose(s, expected, rtol=0, atol=1e-14)
    if ell % 2 == 0:
        assert cell_average_weight(ell) == pytest.approx(expected, rel=1e-15)
    else:
        assert cell_average_weight(ell) == 0.0


# }}}


# {{{ basic reconstructions


def test_lagrange_k0_is_cell_average():
    c = basic_lagrange(field([1.0, 5.0, 2.0]), 0)
    assert c.k == 0
    np.testing.assert_array_equal(c.table[0], [1.0, 5.0, 2.0])


@pytest.mark.parametrize("dx", [1.0, 0.1])
def test_lagrange_k2_linear_data(dx):
    c = basic_lagrange(field([1.0, 2.0, 3.0], dx=dx), 2)
    assert c.table[0, 1] == pytest.approx(2.0)
    assert c.table[1, 1] == pytest.approx(1.0 / dx)
    assert c.table[2, 1] == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("k", [1, 3, 6])
def test_lagrange_rejects_unsupported_degree(k):
    with pytest.raises(ValueError):
        basic_lagrange(field(np.ones(8)), k)


@pytest.mark.parametrize("kind", KINDS)
def test_constants_are_reproduced(kind):
    c = build_coeffs(np.full(9, 2.5), 0.1, kind)
    np.testing.assert_allclose(c.table[0], 2.5, rtol=1e-14)
    np.testing.assert_allclose(c.table[1:], 0.0, atol=1e-10)


@pytest.mark.parametrize("eps, p", [(1e-6, 2), (1.0, 1), (None, 3)])
def test_cweno23_linear_data_gives_linear_weights(eps, p):
    c = basic_cweno23(field([1.0, 2.0, 3.0, 4.0, 5.0]), CwenoParams(epsilon=eps, p=p), "freeflow")
    mid = 2
    np.testing.assert_allclose(c.weights[:, mid], [0.25, 0.25, 0.5], rtol=1e-12)
    np.testing.assert_allclose(c.table[:, mid], [3.0, 1.0, 0.0], atol=1e-12)


def test_cweno_weights_normalized(rng):
    for kind in ("cweno23", "cweno23z", "cweno35", "cwenoz35"):
        c = build_coeffs(rng.normal(size=40), 0.05, kind)
        np.testing.assert_allclose(c.weights.sum(axis=0), 1.0, rtol=1e-14)
        assert np.all(c.weights >= 0)


def test_cweno35_matches_printed_coefficients(rng):
    """Frozen weights against the explicit degree-4 coefficient formulas."""
    n, dx = 12, 0.3
    u = rng.normal(size=n)
    om = rng.random((4, n))
    om /= om.sum(axis=0)
    ext = ghost_extend(u, "periodic", 2)
    scaled, _ = scaled_derivatives(ext, "cweno35", dx, frozen=om)
    R = scaled / (dx ** np.arange(5))[:, None]
    um2, um1, u0, up1, up2 = (np.roll(u, -s) for s in (-2, -1, 0, 1, 2))
    w1, w2, w3, wc = om
    r0 = (wc * (577 / 480 * u0 - 29 / 240 * um1 + 19 / 960 * um2 - 29 / 240 * up1 + 19 / 960 * up2)
          - w2 * (um1 - 26 * u0 + up1) / 24
          + w1 * (23 / 24 * u0 + um1 / 12 - um2 / 24)
          + w3 * (23 / 24 * u0 + up1 / 12 - up2 / 24))
    r1 = (-wc * (8 * um1 - um2 - 8 * up1 + up2) / (12 * dx)
          + w1 * (3 * u0 - 4 * um1 + um2) / (2 * dx)
          - w3 * (3 * u0 - 4 * up1 + up2) / (2 * dx)
          - w2 * (um1 - up1) / (2 * dx))
    r2 = (2 * (w1 * (u0 - 2 * um1 + um2) + w2 * (um1 - 2 * u0 + up1) + w3 * (u0 - 2 * up1 + up2))
          / (2 * dx**2)
          - 2 * wc * (10 * u0 - 6 * um1 + um2 - 6 * up1 + up2) / (4 * dx**2))
    r3 = 6 * wc * ((um1 - up1) / (3 * dx**3) - (um2 - up2) / (6 * dx**3))
    r4 = 24 * wc * ((um2 + 6 * u0 + up2) / (12 * dx**4) - (um1 + up1) / (3 * dx**4))
    for got, want in zip(R, (r0, r1, r2, r3, r4)):
        np.testing.assert_allclose(got, want, rtol=1e-11, atol=1e-11 * np.max(np.abs(want)))


def test_cweno35_linear_weights_reproduce_quartic_sliding_average():
    n, dx = 16, 1.0 / 16
    grid = Grid1D(n, 0.0, 1.0)
    # exact cell averages of a quartic via its antiderivative
    P = np.polynomial.Polynomial([0.3, -1.0, 2.0, 0.5, -1.5])
    Pi = P.integ()
    avg = lambda a: (Pi(a + dx / 2) - Pi(a - dx / 2)) / dx  # noqa: E731
    u = avg(grid.centers)
    c = basic_cweno35(field(u, dx=dx), CwenoParams(epsilon=1e30), "freeflow")
    for i in range(3, n - 4):
        for theta in (0.0, 0.3, 0.77):
            assert q_eval(c, i, theta) == pytest.approx(avg(grid.centers[i] + theta * dx), rel=1e-12)


def test_cweno35_spike_is_finite_and_conservative():
    c = basic_cweno35(field([0, 0, 1, 0, 0, 0, 0]))
    assert np.all(np.isfinite(c.table))
    np.testing.assert_allclose(c.cell_averages(), [0, 0, 1, 0, 0, 0, 0], atol=1e-14)


@pytest.mark.parametrize("kind", KINDS)
def test_per_cell_conservation_identity(kind, rng):
    u = 1.0 + rng.random(30)
    c = build_coeffs(u, 0.07, kind)
    np.testing.assert_allclose(c.cell_averages(), u, rtol=1e-13)


def test_pfc_rejects_non_positive():
    with pytest.raises(ValueError):
        basic_pfc(field([1.0, 0.0, 2.0]))
    with pytest.raises(ValueError):
        basic_pfc(field([1.0, -1.0, 2.0]))


def test_pfc_constant_parabola():
    c = basic_pfc(field(np.full(5, 0.7)))
    np.testing.assert_allclose(c.table, [[0.7] * 5, [0.0] * 5, [0.0] * 5], atol=1e-16)


def test_pfc_limiter_clips_right_slope():
    u = [1e-5, 1e-5, 0.1]
    c = basic_pfc(field(u), "freeflow")
    # the left difference vanishes, so only the clipped right slope remains
    eps_plus = 2 * u[1] / (u[2] - u[1])
    assert eps_plus < 1
    assert c.table[1, 1] == pytest.approx(eps_plus * (u[2] - u[1]) / 2, rel=1e-12)
    assert c.table[1, 1] == pytest.approx(u[1], rel=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(1e-8, 1e3), min_size=4, max_size=30), st.floats(0.0, 0.999))
def test_pfc_positivity_property(vals, theta):
    u = np.array(vals)
    c = basic_pfc(field(u))
    q = np.array([q_eval(c, i, theta) for i in range(u.size)])
    assert q.min() >= -1e-14 * u.max()


# }}}


# {{{ sliding average


@pytest.mark.parametrize("kind", KINDS)
def test_q_at_theta_zero_is_cell_average(kind, rng):
    u = 1.0 + rng.random(12)
    c = build_coeffs(u, 0.1, kind)
    for i in range(12):
        assert q_eval(c, i, 0.0) == pytest.approx(u[i], rel=1e-13)


@given(st.floats(0.0, 0.999))
def test_k0_is_linear_interpolation(theta):
    u = np.array([1.0, 4.0, -2.0, 0.5])
    c = basic_lagrange(field(u), 0)
    for i in range(4):
        assert q_eval(c, i, theta) == pytest.approx((1 - theta) * u[i] + theta * u[(i + 1) % 4], abs=1e-14)


def test_q_rejects_bad_theta():
    c = basic_lagrange(field(np.ones(5)), 2)
    with pytest.raises(ValueError):
        q_eval(c, 0, 1.0)
    with pytest.raises(ValueError):
        q_eval(c, 0, -0.1)


@pytest.mark.parametrize("kind, r", [("lagrange2", 1), ("lagrange4", 2)])
def test_lagrange_equivalence_closed_form(kind, r, rng):
    for _ in range(200):
        u = rng.normal(size=11) + 3.0
        theta = rng.random()
        c = build_coeffs(u, rng.uniform(0.01, 1.0), kind)
        i = int(rng.integers(0, 11))
        assert q_eval(c, i, theta) == pytest.approx(lagrange_closed_form(u, i, theta, r), rel=1e-12)


def test_cweno23_smooth_limit_is_lagrange(rng):
    u = rng.normal(size=10)
    c = build_coeffs(u, 0.1, "cweno23", params=CwenoParams(epsilon=1e40))
    for i in range(10):
        assert q_eval(c, i, 0.4) == pytest.approx(lagrange_closed_form(u, i, 0.4, 1), rel=1e-12)


def test_shifted_identity(rng):
    u = rng.random(9)
    c = build_coeffs(u, 0.1, "cweno23")
    np.testing.assert_allclose(q_shifted_field(c, ShiftQuery(0, 0.0)).values, u, rtol=1e-15)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(KINDS), st.floats(-30.0, 30.0), st.integers(8, 40))
def test_periodic_shift_conserves_sum(kind, shift, n):
    u = 1.0 + 0.5 * np.sin(np.arange(n) * 1.7) ** 2
    out = Reconstruction(kind).shift(u, 1.0 / n, shift / n)
    assert abs(out.sum() - u.sum()) <= 1e-13 * abs(u.sum())


def test_shift_matches_q_eval(rng):
    u = rng.random(10) + 1.0
    rec = Reconstruction("cweno35")
    c = rec.coefficients(u, 0.1)
    out = rec.shift(u, 0.1, 0.1 * 2.25)
    for i in range(10):
        assert out[i] == pytest.approx(q_eval(c, i + 2, 0.25), rel=1e-14)


def test_freeflow_shift_beyond_domain_raises():
    with pytest.raises(OutOfDomainError):
        Reconstruction("cweno23").shift(np.ones(5), 1.0, 7.5, "freeflow")


def test_freeflow_far_field_is_constant():
    u = np.array([2.0] * 10 + [1.0] * 10)
    out = Reconstruction("cweno23").shift(u, 0.1, -0.35, BoundaryPolicy.FREEFLOW)
    assert out[0] == pytest.approx(2.0)
    assert out[-1] == pytest.approx(1.0)


def test_cweno_params_validation():
    with pytest.raises(ValueError):
        CwenoParams(epsilon=0.0)
    with pytest.raises(ValueError):
        CwenoParams(p=0)
    with pytest.raises(ValueError):
        CwenoParams(weights=(0.3, 0.5, 0.2))
    with pytest.raises(ValueError):
        CwenoParams(weights=(0.5, 0.5, 0.5))
    with pytest.raises(ValueError):
        Reconstruction("eno")


# }}}


# {{{ point interpolation comparators


def test_plagrange3_is_exact_for_cubics():
    x = np.arange(12) * 0.1
    p = np.polynomial.Polynomial([1.0, -2.0, 0.5, 3.0])
    out = PointInterpolation("plagrange3").shift(p(x), 0.1, 0.037, "freeflow")
    np.testing.assert_allclose(out[1:-3], p(x[1:-3] + 0.037), rtol=1e-12)


def test_pweno4_close_to_cubic_on_smooth_data():
    n = 64
    x = np.arange(n) / n
    u = np.sin(2 * np.pi * x)
    a = PointInterpolation("pweno4").shift(u, 1 / n, 0.3 / n)
    b = PointInterpolation("plagrange3").shift(u, 1 / n, 0.3 / n)
    assert np.max(np.abs(a - b)) < 1e-5


def test_point_interpolation_flags():
    assert not PointInterpolation("pweno4").conservative
    assert Reconstruction("pfc").conservative


# }}}

import math

import numpy as np
import pytest

from pertlab import CutoffTooLargeError, QuadConfig
from pertlab.quad import nested_J, nested_J_grid, weighted_integral
from pertlab.series import RationalPoly

from conftest import ONE, X2, X4

SQRT_PI_HALF = math.sqrt(math.pi) / 2.0


def brute_nested(coeffs, x_cut, h=2e-4):
    """Trapezoid double integral of int_0^X 1/w int_0^y w S, sigma = 0."""
    y = np.arange(0.0, x_cut + h / 2, h)
    w = np.exp(-y * y)
    s = np.zeros_like(y)
    for c in reversed(coeffs):
        s = s * y * y + c
    inner_integrand = w * s
    inner = np.concatenate(([0.0], np.cumsum(
        (inner_integrand[1:] + inner_integrand[:-1]) * h / 2)))
    outer_integrand = inner / w
    return float(np.trapezoid(outer_integrand, dx=h))


@pytest.mark.parametrize("x_cut", [1.0, 2.0, 3.0])
@pytest.mark.parametrize("s,coeffs", [(ONE, [1.0]), (X2, [0.0, 1.0]),
                                      (X4, [0.0, 0.0, 1.0])])
def test_nested_J_against_brute_force(s, coeffs, x_cut):
    ours = nested_J(s, x_cut).outer.real
    ref = brute_nested(coeffs, x_cut)
    assert ours == pytest.approx(ref, rel=1e-6)


@pytest.mark.parametrize("x_cut", [0.1, 0.2])
def test_small_cutoff_taylor_unit_source(x_cut):
    # J[1; X] = X^2/2 + X^4/6 + 2 X^6/45 + O(X^8)
    x2 = x_cut * x_cut
    taylor = x2 / 2 + x2**2 / 6 + 2 * x2**3 / 45
    assert nested_J(ONE, x_cut).outer.real == pytest.approx(taylor, rel=2e-6)


@pytest.mark.parametrize("x_cut", [0.1, 0.2])
def test_small_cutoff_taylor_x2_source(x_cut):
    # J[x^2; X] = X^4/12 + X^6/45 + O(X^8)
    x2 = x_cut * x_cut
    taylor = x2**2 / 12 + x2**3 / 45
    # dropped X^8 term enters at relative order ~0.057 X^4
    assert nested_J(X2, x_cut).outer.real == pytest.approx(
        taylor, rel=0.1 * x2 * x2)


def test_weighted_integral_gaussian_moments():
    # at X = 6 the Gaussian tail is below double precision
    assert weighted_integral(ONE, 6.0).real == pytest.approx(
        SQRT_PI_HALF, rel=1e-11)
    assert weighted_integral(X4, 6.0).real == pytest.approx(
        0.75 * SQRT_PI_HALF, rel=1e-11)
    assert weighted_integral(ONE, 6.0).imag == 0.0


def test_sigma_zero_path_is_exactly_real():
    res = nested_J(X4, 4.0)
    assert res.outer.imag == 0.0
    assert res.inner.imag == 0.0


def test_conjugation_symmetry():
    # sigma -> -sigma conjugates the weight, hence every accumulator
    plus = nested_J(X2, 4.0, sigma=0.05)
    minus = nested_J(X2, 4.0, sigma=-0.05)
    assert minus.outer == pytest.approx(plus.outer.conjugate(), rel=1e-12)
    assert minus.weighted == pytest.approx(plus.weighted.conjugate(),
                                           rel=1e-12)


def test_grid_pass_matches_single_calls():
    grid = [2.0, 3.0, 4.0]
    swept = nested_J_grid(X4, grid)
    for res in swept:
        single = nested_J(X4, res.x_cut)
        assert res.outer.real == pytest.approx(single.outer.real, rel=1e-9)
        assert res.x_cut in grid


def test_grid_validation():
    with pytest.raises(ValueError):
        nested_J_grid(ONE, [])
    with pytest.raises(ValueError):
        nested_J_grid(ONE, [2.0, 2.0])
    with pytest.raises(ValueError):
        nested_J_grid(ONE, [-1.0, 2.0])
    with pytest.raises(CutoffTooLargeError):
        nested_J_grid(ONE, [30.0])
    with pytest.raises(CutoffTooLargeError):
        nested_J_grid(ONE, [12.0], cfg=QuadConfig(x_max=10.0))


def test_config_validation():
    with pytest.raises(ValueError):
        QuadConfig(rel_tol=0.0)
    with pytest.raises(ValueError):
        QuadConfig(x_max=100.0)


def test_zero_source_short_circuits():
    res = nested_J(RationalPoly.zero(), 5.0)
    assert res.outer == 0.0
    assert res.n_steps == 0


def test_non_polynomial_source_rejected():
    with pytest.raises(TypeError):
        nested_J(lambda x: x * x, 2.0)


def test_ghost_channel_consistent_with_basis():
    from pertlab.basis import chi0_dawson
    res = nested_J(ONE, 5.0, sigma=0.1)
    assert res.chi_cut == pytest.approx(chi0_dawson(5.0), rel=1e-9)

import math

import pytest

from pertlab.basis import psi0, chi0_dawson
from pertlab.ghost import (SigmaSweepRow, dominant_term_split, ghost_energy,
                           ghost_energy_extrapolated, ibp_identity_check,
                           sigma_extrapolate)

from conftest import ONE, X2

SQRT_PI_HALF = math.sqrt(math.pi) / 2.0


def test_pointwise_weight_identity():
    # 1/Psi0^2 == (i/sigma) (psi0/Psi0)' follows from the unit Wronskian;
    # checked here by a central difference in x
    sigma, h = 0.05, 1e-5

    def ratio(x):
        return psi0(x) / (psi0(x) + 1j * sigma * chi0_dawson(x))

    for x in (0.5, 2.0, 5.0, 8.0, 10.0):
        lhs = 1.0 / (psi0(x) + 1j * sigma * chi0_dawson(x)) ** 2
        rhs = (1j / sigma) * (ratio(x + h) - ratio(x - h)) / (2 * h)
        assert abs(lhs - rhs) / abs(lhs) < 1e-8


@pytest.mark.parametrize("sigma", [0.1, 0.01])
@pytest.mark.parametrize("x_cut", [4.0, 5.0, 6.0])
def test_ibp_identity(series_x4, sigma, x_cut):
    sources = [ONE, X2, series_x4.v_eff(1), series_x4.v_eff(2)]
    for s in sources:
        assert ibp_identity_check(s, sigma, x_cut) < 1e-8


def test_real_error_scales_like_sigma_squared(series_x2):
    # frozen slope at X = 6 for n = 1: |Re ratio - E_1| ~ 14.88 sigma^2
    errs = {s: abs(ghost_energy(1, s, 6.0, series_x2).ratio.real
                   - float(series_x2.energy(1)))
            for s in (3e-3, 1e-3)}
    assert errs[1e-3] / errs[3e-3] == pytest.approx(1.0 / 9.0, rel=0.01)
    assert errs[1e-3] == pytest.approx(14.877e-6, rel=0.01)


def test_imag_error_scales_like_sigma(series_x2):
    ims = {s: ghost_energy(1, s, 6.0, series_x2).imag_ratio
           for s in (3e-3, 1e-3)}
    assert ims[1e-3] / ims[3e-3] == pytest.approx(1.0 / 3.0, rel=0.2)


def test_sigma_extrapolate_recovers_synthetic_polynomial():
    def row(s):
        ratio = complex(2.0 - 3.0 * s + 5.0 * s * s)
        return SigmaSweepRow(sigma=s, x_cut=6.0, numerator=ratio,
                             denominator=1.0, ratio=ratio, oracle=2.0,
                             abs_err=abs(ratio - 2.0),
                             imag_ratio=0.0)

    fit = sigma_extrapolate([row(s) for s in (0.1, 0.05, 0.02, 0.01)])
    assert fit.model == "quadratic"
    assert fit.limit == pytest.approx(2.0, abs=1e-12)
    assert fit.residual < 1e-12
    linear = sigma_extrapolate([row(s) for s in (0.1, 0.05, 0.02)])
    assert linear.model == "linear"


def test_sigma_extrapolate_validation():
    rows = [SigmaSweepRow(s, 6.0, 0j, 1j, 0j, 0.0, 0.0, 0.0)
            for s in (0.1, 0.01)]
    with pytest.raises(ValueError):
        sigma_extrapolate(rows)
    rows3 = [SigmaSweepRow(s, 6.0, 0j, 1j, 0j, 0.0, 0.0, 0.0)
             for s in (0.01, 0.05, 0.1)]
    with pytest.raises(ValueError):
        sigma_extrapolate(rows3)
    mixed_cut = [SigmaSweepRow(s, x, 0j, 1j, 0j, 0.0, 0.0, 0.0)
                 for s, x in ((0.1, 6.0), (0.05, 6.0), (0.01, 5.0))]
    with pytest.raises(ValueError):
        sigma_extrapolate(mixed_cut)
    ok = [SigmaSweepRow(s, 6.0, 0j, 1j, 0j, 0.0, 0.0, 0.0)
          for s in (0.1, 0.05, 0.01)]
    with pytest.raises(ValueError):
        sigma_extrapolate(ok, model="cubic")


def test_extrapolated_energy_first_order(series_x4):
    rows, fit = ghost_energy_extrapolated(
        1, (1e-6, 3e-7, 1e-7, 3e-8), 6.0, series_x4)
    assert fit.limit == pytest.approx(0.75, abs=1e-9)
    assert rows[0].sigma > rows[-1].sigma


def test_ghost_energy_rejects_nonpositive_sigma(series_x4):
    with pytest.raises(ValueError):
        ghost_energy(1, 0.0, 6.0, series_x4)
    with pytest.raises(ValueError):
        ibp_identity_check(ONE, -0.1, 5.0)
    with pytest.raises(ValueError):
        dominant_term_split(ONE, 0.0, 5.0)


def test_dominant_term_carries_the_matrix_element(series_x4):
    # the 1/sigma term of J_sigma[Vt_1] reduces to int psi0^2 x^4
    # = (3/4) sqrt(pi)/2 as sigma -> 0
    vt1 = series_x4.v_eff(1)
    sigma = 1e-4
    singular, remainder = dominant_term_split(vt1, sigma, 6.0)
    element = (singular * sigma / 1j).real
    assert element / SQRT_PI_HALF == pytest.approx(0.75, abs=1e-5)
    # and the real part of the remainder is sigma-stable
    _, rem_coarse = dominant_term_split(vt1, 1e-2, 6.0)
    assert remainder.real == pytest.approx(rem_coarse.real, rel=0.1)
    assert remainder.real == pytest.approx(325.04, rel=1e-3)

"""Nested (iterated) weighted integrals reduced to one adaptive ODE pass.

The central objects are the functionals

    J[S; X]       = int_0^X dy (1/w(y)) int_0^y dz w(z) S(z),
    W[S; X]       = int_0^X dy  Psi0(y) psi0(y) S(y),

with weight w = psi0^2 for sigma = 0 and w = rho = (psi0 + i*sigma*chi0)^2
for sigma != 0.  Instead of re-evaluating the inner integral for every outer
point, both accumulators (plus the companion single integral W and the ghost
state chi0 itself) are co-integrated as one initial-value system:

    chi'' = (x^2 - 1) chi,   I' = w S,   J' = I / w,   W' = Psi0 psi0 S.

The outer integrand grows like exp(y^2); the embedded RK pair with scaled
error control handles that dynamic range in a single pass.  Cutoffs are
always finite and explicit -- the infinite upper limit of the formal
definitions only ever appears through sweeps in X.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import X_MAX, check_cutoff
from .errors import CutoffTooLargeError
from .rk45 import integrate
from .series import RationalPoly

_CHI, _CHIP, _I, _J, _W = range(5)


@dataclass(frozen=True)
class QuadConfig:
    rel_tol: float = 1e-10
    abs_floor: float = 1e-14
    max_steps: int = 500_000
    x_max: float = X_MAX

    def __post_init__(self):
        if self.rel_tol <= 0:
            raise ValueError("rel_tol must be positive")
        if self.x_max > X_MAX:
            raise ValueError(f"x_max may not exceed {X_MAX}")


DEFAULT_CONFIG = QuadConfig()


@dataclass(frozen=True)
class NestedIntegralResult:
    """Accumulators of one pass to cutoff x_cut.

    inner  : I(X) = int_0^X w S          (complex; exactly real at sigma=0)
    outer  : J(X) = int_0^X I/w          (the nested integral)
    weighted: W(X) = int_0^X Psi0 psi0 S (companion single integral)
    chi_cut, chip_cut: ghost state and derivative at the cutoff
    err_estimate: accumulated local-error magnitude for the outer channel
    """

    x_cut: float
    sigma: float
    inner: complex
    outer: complex
    weighted: complex
    chi_cut: float
    chip_cut: float
    err_estimate: float
    n_steps: int
    tol_met: bool


def _poly_coeffs(s):
    if isinstance(s, RationalPoly):
        return [float(c) for c in s.coeffs]
    raise TypeError(f"integrand must be a RationalPoly, got {type(s).__name__}")


def _make_rhs(coeffs, sigma):
    def s_of(x2):
        acc = 0.0
        for c in reversed(coeffs):
            acc = acc * x2 + c
        return acc

    if sigma == 0.0:
        def rhs(x, y):
            x2 = x * x
            p2 = math.exp(-x2)
            s = s_of(x2)
            return np.array([y[_CHIP], (x2 - 1.0) * y[_CHI],
                             p2 * s, y[_I] / p2, p2 * s])
        return rhs

    def rhs(x, y):
        x2 = x * x
        p = math.exp(-0.5 * x2)
        psi = p + 1j * sigma * y[_CHI]
        w = psi * psi
        s = s_of(x2)
        return np.array([y[_CHIP], (x2 - 1.0) * y[_CHI],
                         w * s, y[_I] / w, psi * p * s])
    return rhs


def nested_J_grid(s, x_cuts, sigma=0.0, cfg: QuadConfig = DEFAULT_CONFIG):
    """Evaluate the nested integral at every cutoff in increasing x_cuts.

    One integration pass; returns a list of NestedIntegralResult.
    """
    xs = [float(x) for x in x_cuts]
    if not xs or any(b <= a for a, b in zip(xs, xs[1:])) or xs[0] <= 0:
        raise ValueError("cutoff grid must be positive and strictly increasing")
    check_cutoff(xs[-1])
    if xs[-1] > cfg.x_max:
        raise CutoffTooLargeError(
            f"cutoff {xs[-1]} exceeds configured guard {cfg.x_max}")
    coeffs = _poly_coeffs(s)
    sigma = float(sigma)
    dtype = float if sigma == 0.0 else complex
    y0 = np.zeros(5, dtype=dtype)
    y0[_CHIP] = 1.0
    res = integrate(_make_rhs(coeffs, sigma), 0.0, xs[-1], y0,
                    rtol=cfg.rel_tol, atol=cfg.abs_floor,
                    max_steps=cfg.max_steps, checkpoints=xs)
    out = []
    steps_total = res.n_accepted
    for x, y in res.checkpoints:
        out.append(NestedIntegralResult(
            x_cut=x, sigma=sigma,
            inner=complex(y[_I]), outer=complex(y[_J]), weighted=complex(y[_W]),
            chi_cut=float(np.real(y[_CHI])), chip_cut=float(np.real(y[_CHIP])),
            err_estimate=float(res.err_accum[_J]),
            n_steps=steps_total,
            tol_met=True))
    return out


def nested_J(s, x_cut, sigma=0.0, cfg: QuadConfig = DEFAULT_CONFIG) -> NestedIntegralResult:
    """J[S; X] (and companions) at a single cutoff."""
    if not isinstance(s, RationalPoly):
        raise TypeError(
            f"integrand must be a RationalPoly, got {type(s).__name__}")
    if s.is_zero():
        # zero integrand: nothing to integrate
        zero = complex(0.0)
        return NestedIntegralResult(float(x_cut), float(sigma), zero, zero, zero,
                                    float("nan"), float("nan"), 0.0, 0, True)
    return nested_J_grid(s, [x_cut], sigma=sigma, cfg=cfg)[0]


def weighted_integral(s, x_cut, sigma=0.0, cfg: QuadConfig = DEFAULT_CONFIG) -> complex:
    """int_0^X Psi0 psi0 S dy (reduces to int psi0^2 S at sigma = 0)."""
    return nested_J(s, x_cut, sigma=sigma, cfg=cfg).weighted

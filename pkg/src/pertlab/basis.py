"""Unperturbed oscillator ground state and its non-normalizable partner.

Dimensionless units throughout: H0 = -d^2/dx^2 + x^2 on the half line
[0, inf) with an even-parity condition at the origin, so the ground state is

    psi0(x) = exp(-x^2/2),   E0 = 1.

The second solution at the same energy, chi0, is fixed by chi0(0) = 0,
chi0'(0) = 1, which pins the Wronskian psi0*chi0' - psi0'*chi0 = 1.  The
literature does not single out a normalization for chi0; any rescaling is
absorbed into the mixing parameter sigma (which is sent to 0 anyway), so the
Wronskian convention is pure bookkeeping.

chi0 grows like exp(x^2/2)/(2x) and is evaluated two independent ways:

* forward integration of the IVP chi0'' = (x^2 - 1) chi0 (the growing
  solution is stable to integrate forward) -- the primary route;
* the closed form chi0 = exp(x^2/2) * D(x) with D the Dawson integral,
  evaluated by power series / asymptotic series -- the cross-check route.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import CutoffTooLargeError
from .rk45 import integrate

#: Largest cutoff at which exp(x^2) products in the nested integrals stay
#: below double-precision overflow (exp(x^2) overflows near x = 26.6).
X_MAX = 25.0

E0 = 1.0

# Dawson series is well conditioned (all-positive inner sum) up to here;
# beyond it the asymptotic series already reaches full double precision.
_DAWSON_SPLIT = 6.0


def check_cutoff(x):
    if x > X_MAX:
        raise CutoffTooLargeError(
            f"cutoff {x} too large for scalar precision (limit {X_MAX})")


def psi0(x):
    """Ground state exp(-x^2/2); accepts scalars or arrays."""
    x = np.asarray(x, dtype=float)
    out = np.exp(-0.5 * x * x)
    return float(out) if out.ndim == 0 else out


def psi0_prime(x):
    x = np.asarray(x, dtype=float)
    out = -x * np.exp(-0.5 * x * x)
    return float(out) if out.ndim == 0 else out


def _dawson_series(x: float) -> float:
    # D(x) = exp(-x^2) * sum_k x^(2k+1) / (k! (2k+1)); positive terms, so no
    # cancellation -- usable wherever exp(x^2) is representable.
    x2 = x * x
    term = x
    total = x
    k = 0
    while True:
        term *= x2 / (k + 1)
        contrib = term / (2 * k + 3)
        total += contrib
        k += 1
        if contrib < 1e-17 * total:
            break
    return math.exp(-x2) * total


def _dawson_asymptotic(x: float) -> float:
    # D(x) ~ 1/(2x) * sum_k (2k-1)!!/(2x^2)^k; truncated at the smallest term.
    inv2x2 = 1.0 / (2.0 * x * x)
    term = 1.0
    total = 1.0
    k = 0
    while True:
        nxt = term * (2 * k + 1) * inv2x2
        if nxt >= term or nxt < 1e-18 * total:
            total += nxt
            break
        term = nxt
        total += term
        k += 1
    return total / (2.0 * x)


def dawson(x):
    """Dawson integral D(x) = exp(-x^2) * int_0^x exp(t^2) dt, x >= 0."""
    if np.ndim(x) > 0:
        return np.array([dawson(float(v)) for v in np.asarray(x)])
    x = float(x)
    if x == 0.0:
        return 0.0
    if x <= _DAWSON_SPLIT:
        return _dawson_series(x)
    return _dawson_asymptotic(x)


def chi0_dawson(x):
    """Closed-form chi0(x) = exp(x^2/2) * D(x) -- the cross-check route."""
    if np.ndim(x) > 0:
        return np.array([chi0_dawson(float(v)) for v in np.asarray(x)])
    check_cutoff(x)
    return math.exp(0.5 * x * x) * dawson(x)


def _chi_rhs(t, y):
    return np.array([y[1], (t * t - 1.0) * y[0]])


def chi0_with_derivative(x, rtol=1e-12):
    """(chi0, chi0') by forward IVP integration -- the primary route.

    Accepts a scalar or an increasing array of points; an array input costs a
    single integration pass.
    """
    if np.ndim(x) > 0:
        xs = np.asarray(x, dtype=float)
        if len(xs) == 0:
            return np.array([]), np.array([])
        if np.any(np.diff(xs) <= 0) or xs[0] < 0:
            raise ValueError("grid must be nonnegative and strictly increasing")
        check_cutoff(float(xs[-1]))
        lead = []
        if xs[0] == 0.0:
            lead = [(0.0, np.array([0.0, 1.0]))]
            xs = xs[1:]
        res = integrate(_chi_rhs, 0.0, float(xs[-1]), np.array([0.0, 1.0]),
                        rtol=rtol, atol=1e-16, checkpoints=xs)
        pts = lead + res.checkpoints
        return (np.array([p[1][0] for p in pts]),
                np.array([p[1][1] for p in pts]))
    x = float(x)
    if x < 0:
        raise ValueError("x must be nonnegative")
    check_cutoff(x)
    if x == 0.0:
        return 0.0, 1.0
    res = integrate(_chi_rhs, 0.0, x, np.array([0.0, 1.0]),
                    rtol=rtol, atol=1e-16)
    return float(res.y[0]), float(res.y[1])


def ghost_chi0(x, rtol=1e-12):
    """chi0(x) via the IVP route; scalar in, scalar out (arrays allowed)."""
    chi, _ = chi0_with_derivative(x, rtol=rtol)
    return chi


def mixed_state(x, sigma):
    """Ghost-mixed pair (Psi0, rho) at one point.

    Psi0 = psi0 + i*sigma*chi0 and rho = Psi0^2 -- the literal complex
    square, not |Psi0|^2.  Since the Wronskian of (psi0, chi0) is 1, the real
    and imaginary parts of Psi0 cannot vanish simultaneously, so |Psi0| > 0
    everywhere and 1/rho is finite.
    """
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    p = psi0(x)
    chi = chi0_dawson(x)
    big_psi = p + 1j * sigma * chi
    return big_psi, big_psi * big_psi


def wronskian(x, rtol=1e-12):
    """psi0*chi0' - psi0'*chi0, with chi0' taken from the IVP state."""
    chi, chip = chi0_with_derivative(x, rtol=rtol)
    return psi0(x) * chip - psi0_prime(x) * chi

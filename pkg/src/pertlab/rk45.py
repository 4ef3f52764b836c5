"""Embedded Dormand-Prince 5(4) Runge-Kutta integrator with PI step control.

The 5th order solution is propagated; the difference to the embedded 4th
order solution drives the step-size controller.  The error norm is taken on
the *scaled* state (each component divided by atol + rtol*|y|), which is what
lets the same pass resolve integrands whose components span hundreds of
orders of magnitude (the outer accumulator of the nested integrals grows
like exp(x^2)).

State vectors may be real or complex numpy arrays.  Optional checkpoints
force the integrator to land exactly on a sorted list of interior points and
record the state there, so a whole cutoff sweep costs a single pass.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ToleranceError

# Dormand-Prince 5(4) tableau (FSAL: the 7th stage is the next step's 1st).
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
_B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
# b5 - b4: dotting the stages with this gives the local error estimate.
_E = np.array(
    [71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40]
)

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 6.0
_BETA = 0.04          # PI stabilization exponent
_EXPO = 0.2 - 0.75 * _BETA


@dataclass
class IntegrationResult:
    t: float
    y: np.ndarray
    n_accepted: int
    n_rejected: int
    err_accum: np.ndarray          # summed |local error| per component
    checkpoints: list              # (t, y copy) at each requested checkpoint


def integrate(f, t0, t1, y0, rtol=1e-10, atol=1e-14, max_steps=500_000,
              checkpoints=None):
    """Integrate y' = f(t, y) from t0 to t1 > t0.

    checkpoints: optional increasing sequence of interior/end points at which
    the state is recorded (steps are clipped to land on them exactly).
    """
    y = np.asarray(y0).copy()
    t = t0
    ckpts = list(checkpoints) if checkpoints is not None else []
    ck_idx = 0
    recorded = []
    err_accum = np.zeros(y.shape[0])

    k = np.empty((7,) + y.shape, dtype=y.dtype)
    k[0] = f(t, y)
    h = min(1e-4 * (t1 - t0), t1 - t0)
    err_old = 1e-4
    n_acc = n_rej = 0

    while t < t1:
        if n_acc + n_rej >= max_steps:
            raise ToleranceError(
                f"step limit {max_steps} exceeded at t={t:.6g} (h={h:.3g})")
        # land exactly on the next checkpoint / endpoint
        t_stop = ckpts[ck_idx] if ck_idx < len(ckpts) else t1
        if t + h >= t_stop:
            h = t_stop - t
        if h <= abs(t) * 1e-16:
            raise ToleranceError(f"step size underflow at t={t:.6g}")

        for i in range(1, 6):
            yi = y + h * (_A[i] @ k[:i])
            k[i] = f(t + _C[i] * h, yi)
        y_new = y + h * (_A[6] @ k[:6])
        k[6] = f(t + h, y_new)

        err_vec = h * (_E @ k)
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
        err = float(np.sqrt(np.mean(np.abs(err_vec / scale) ** 2)))

        if err <= 1.0:
            t = t + h
            y = y_new
            k[0] = k[6]
            err_accum += np.abs(err_vec)
            n_acc += 1
            if ck_idx < len(ckpts) and t >= ckpts[ck_idx] - 1e-15 * max(1.0, abs(t)):
                recorded.append((t, y.copy()))
                ck_idx += 1
            err_floor = max(err, 1e-10)
            factor = _SAFETY * err_floor ** (-_EXPO) * err_old ** _BETA
            h *= min(_MAX_FACTOR, max(_MIN_FACTOR, factor))
            err_old = err_floor
        else:
            n_rej += 1
            h *= max(_MIN_FACTOR, _SAFETY * err ** -0.2)

    return IntegrationResult(t, y, n_acc, n_rej, err_accum, recorded)

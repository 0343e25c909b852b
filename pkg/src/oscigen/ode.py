"""Adaptive Dormand-Prince 5(4) integration for small complex systems.

Used by the excitation module to propagate the classical oscillator
equation xi'' + omega^2(t) xi = 0 between its asymptotic regions.  The pair
is the standard explicit one with an embedded fourth-order error estimate,
PI-free step control and first-same-as-last reuse.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IntegrationError

__all__ = ["IntegratorStats", "integrate_path"]

_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40)
_E = tuple(b5 - b4 for b5, b4 in zip(_B5, _B4))


@dataclass
class IntegratorStats:
    steps: int = 0
    rejected: int = 0
    rhs_evals: int = 0


def integrate_path(f, t0: float, checkpoints, y0: np.ndarray, rtol: float,
                   atol: float, max_steps: int = 2_000_000):
    """Integrate y' = f(t, y) from t0 through increasing checkpoint times.

    Returns (list of states at the checkpoints, stats).  The step size
    adapts to the embedded error estimate; hitting a checkpoint exactly is
    enforced by clipping the step.
    """
    if len(checkpoints) == 0:
        raise ValueError("need at least one checkpoint")
    t = float(t0)
    y = np.array(y0, dtype=complex)
    stats = IntegratorStats()
    out = []
    k1 = f(t, y)
    stats.rhs_evals += 1
    span = checkpoints[-1] - t0
    h = min(span / 100.0, 0.1)
    k = [None] * 7
    for t_target in checkpoints:
        if t_target < t - 1e-12:
            raise ValueError("checkpoints must not decrease")
        while t < t_target - 1e-12:
            if stats.steps + stats.rejected > max_steps:
                raise IntegrationError("step budget exhausted")
            h = min(h, t_target - t)
            if h < 1e-14 * max(1.0, abs(t)):
                raise IntegrationError(f"step size underflow near t = {t}")
            k[0] = k1
            for i in range(1, 7):
                yi = y + h * sum(aij * k[j] for j, aij in enumerate(_A[i]))
                k[i] = f(t + _C[i] * h, yi)
            stats.rhs_evals += 6
            y5 = y + h * sum(b * k[i] for i, b in enumerate(_B5) if b)
            err_vec = h * sum(e * k[i] for i, e in enumerate(_E) if e)
            scale = atol + rtol * np.maximum(np.abs(y), np.abs(y5))
            err = float(np.sqrt(np.mean(np.abs(err_vec / scale) ** 2)))
            if err <= 1.0:
                t += h
                y = y5
                k1 = k[6]  # first-same-as-last
                stats.steps += 1
            else:
                stats.rejected += 1
                k1 = k[0]
            factor = 0.9 * (err + 1e-16) ** -0.2
            h *= min(5.0, max(0.2, factor))
        out.append(y.copy())
    return out, stats

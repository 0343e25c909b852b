"""Special-function helpers: Laguerre polynomials, gamma-ratio coefficients
and the inverse hyperbolic tangent."""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = ["laguerre", "laguerre_sequence", "gamma_ratio_coeff", "arctanh"]


def laguerre(s: int, x: float) -> float:
    """Laguerre polynomial L_s(x) by the forward three-term recurrence

        (s+1) L_{s+1}(x) = (2s+1-x) L_s(x) - s L_{s-1}(x).

    Forward recurrence keeps the alternating partial sums used downstream
    accurate for moderate orders.
    """
    if s < 0:
        raise ValueError("order must be nonnegative")
    prev, cur = 0.0, 1.0
    for k in range(s):
        prev, cur = cur, ((2 * k + 1 - x) * cur - k * prev) / (k + 1)
    return cur


def laguerre_sequence(smax: int, x: float) -> list[float]:
    """[L_0(x), ..., L_smax(x)] from a single recurrence sweep."""
    if smax < 0:
        raise ValueError("order must be nonnegative")
    vals = [1.0]
    prev, cur = 0.0, 1.0
    for k in range(smax):
        prev, cur = cur, ((2 * k + 1 - x) * cur - k * prev) / (k + 1)
        vals.append(cur)
    return vals


def gamma_ratio_coeff(n: int, j):
    """Gamma(n - 2j) / (n! Gamma(-2j)) via the product recurrence

        prod_{k=0}^{n-1} (k - 2j) / (k + 1),

    which avoids gamma evaluations entirely.  Exact when j is a Fraction,
    float otherwise.  -2j at a pole of Gamma (a nonpositive integer) is
    rejected.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    m2j = -2 * j
    if isinstance(j, Fraction):
        if m2j.denominator == 1 and m2j <= 0:
            raise ValueError(f"Gamma({m2j}) pole: -2j must avoid nonpositive integers")
        out = Fraction(1)
    else:
        m2j = float(m2j)
        if m2j <= 0 and m2j == int(m2j):
            raise ValueError(f"Gamma({m2j}) pole: -2j must avoid nonpositive integers")
        out = 1.0
    for k in range(n):
        out = out * (k - 2 * j) / (k + 1)
    return out


def arctanh(x: float) -> float:
    """(1/2) ln((1+x)/(1-x)) on the open interval (-1, 1)."""
    if not -1.0 < x < 1.0:
        raise ValueError("arctanh needs |x| < 1")
    return math.atanh(x)

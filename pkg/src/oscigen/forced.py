"""Forced constant-frequency oscillator.

The generating function of the transition probabilities is

    G(u, v | nu) = (1 - uv)^{-1} exp(-nu (1-u)(1-v) / (1-uv)),

with nu the dimensionless excitation parameter.  For series extraction the
scalar e^{-nu} is factored out first,

    G = e^{-nu} (1-uv)^{-1} exp(nu (u + v - 2uv) / (1-uv)),

so the remaining series has rational coefficients: in exact mode every
w_mn(nu) is e^{-nu} times a polynomial in nu with rational coefficients.
That polynomial form makes the moment integrals over nu exact term by term
(integral of nu^k e^{-nu} is k!).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .domains import FLOAT, poly_domain
from .errors import SingularEvaluationError
from .probtable import ProbTable, SymbolicTable
from .quadrature import gauss_laguerre
from .series import Series2
from .specfun import laguerre_sequence

__all__ = [
    "NuParam",
    "SumRuleRecord",
    "forced_gf_value",
    "forced_prob_table",
    "forced_sum_rules",
    "forced_sk",
]


@dataclass(frozen=True)
class NuParam:
    """Validated excitation parameter nu >= 0."""

    value: float

    def __post_init__(self):
        if not self.value >= 0.0:
            raise ValueError(f"nu must be nonnegative, got {self.value}")


def _nu_value(nu) -> float:
    if isinstance(nu, NuParam):
        return nu.value
    return NuParam(float(nu)).value


def forced_gf_value(u, v, nu) -> complex:
    """Evaluate G(u, v | nu); accepts scalars or numpy arrays.

    The only singularity is the simple pole at uv = 1.
    """
    nu_val = _nu_value(nu)
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    w = 1.0 - u * v
    if np.any(np.abs(w) < 1e-13):
        raise SingularEvaluationError("uv = 1 pole of the generating function")
    out = np.exp(-nu_val * (1.0 - u) * (1.0 - v) / w) / w
    return complex(out) if out.ndim == 0 else out


@lru_cache(maxsize=32)
def _exact_grid(max_m: int, max_n: int) -> Series2:
    """Series of e^{nu} G without the e^{-nu} prefactor, coefficients
    polynomial in nu."""
    dom = poly_domain("nu")
    nu = dom.variable()
    inv = Series2.from_terms(dom, max_m, max_n, {(0, 0): 1, (1, 1): -1}).inverse()
    lin = Series2.from_terms(dom, max_m, max_n, {(1, 0): 1, (0, 1): 1, (1, 1): -2})
    x = (lin * inv).scale(nu)
    return inv * x.exp()


@lru_cache(maxsize=128)
def _float_grid(nu_val: float, max_m: int, max_n: int) -> np.ndarray:
    """Numeric coefficient grid of e^{nu} G at a fixed nu."""
    inv = Series2.from_terms(FLOAT, max_m, max_n, {(0, 0): 1, (1, 1): -1}).inverse()
    lin = Series2.from_terms(FLOAT, max_m, max_n, {(1, 0): 1, (0, 1): 1, (1, 1): -2})
    x = (lin * inv).scale(nu_val)
    return (inv * x.exp()).rows


def _clamp_roundoff(values: np.ndarray) -> np.ndarray:
    floor = values.min()
    if floor < -1e-12:
        raise AssertionError(f"negative probability {floor:.3e} beyond roundoff")
    return np.where(values < 0.0, 0.0, values)


def forced_prob_table(nu, size: int = 16, mode: str = "float") -> ProbTable:
    """Table of w_mn(nu) for 0 <= m, n < size.

    In exact mode the symbolic polynomials (the e^{nu}-free part of each
    entry) ride along with the numeric values.
    """
    nu_val = _nu_value(nu)
    if size < 1:
        raise ValueError("size must be positive")
    if mode not in ("float", "exact"):
        raise ValueError(f"unknown mode {mode!r}")
    pref = math.exp(-nu_val)
    if mode == "exact":
        grid = _exact_grid(size - 1, size - 1)
        entries = tuple(tuple(row) for row in grid.rows)
        values = np.array(
            [[pref * float(p(nu_val)) for p in row] for row in entries]
        )
        symbolic = SymbolicTable("exp(-nu)", "nu", entries)
    else:
        values = pref * _float_grid(nu_val, size - 1, size - 1)
        symbolic = None
    values = _clamp_roundoff(values)
    tails = np.maximum(0.0, 1.0 - values.sum(axis=1))
    table = ProbTable("forced", {"nu": nu_val}, mode, values, tails, symbolic)
    table.validate()
    return table


@dataclass(frozen=True)
class SumRuleRecord:
    """Moments of w_mn over nu: exact rational values plus the
    Gauss-Laguerre cross-check."""

    norm: Fraction
    mean: Fraction
    variance: Fraction
    norm_quad: float
    mean_quad: float
    variance_quad: float


def forced_sum_rules(m: int, n: int) -> SumRuleRecord:
    """Zeroth, first and central second moment of w_mn(nu) over [0, inf).

    Exact route: integrate the symbolic e^{-nu} * polynomial form term by
    term.  Numeric route: Gauss-Laguerre of matching degree.
    """
    if m < 0 or n < 0:
        raise ValueError("quantum numbers must be nonnegative")
    poly = _exact_grid(m, n).coeff(m, n)
    fact = [Fraction(math.factorial(k)) for k in range(poly.degree + 3)]
    norm = sum((c * fact[k] for k, c in enumerate(poly.coeffs)), Fraction(0))
    mean = sum((c * fact[k + 1] for k, c in enumerate(poly.coeffs)), Fraction(0))
    second = sum((c * fact[k + 2] for k, c in enumerate(poly.coeffs)), Fraction(0))
    mu = mean / norm
    variance = second - 2 * mu * mean + mu * mu * norm

    rule = gauss_laguerre((m + n) // 2 + 4)
    # rational Horner at the exact binary node value: the alternating-sign
    # polynomials are too ill-conditioned for float evaluation at large nodes
    px = np.array([float(poly(Fraction(x))) for x in rule.nodes])
    norm_q = float(np.dot(rule.weights, px))
    mean_q = float(np.dot(rule.weights, rule.nodes * px))
    mu_q = mean_q / norm_q
    var_q = float(np.dot(rule.weights, (rule.nodes - mu_q) ** 2 * px))
    return SumRuleRecord(norm, mean, variance, norm_q, mean_q, var_q)


def forced_sk(k: int, nu) -> float:
    """Anti-diagonal sum S_k(nu) = sum_{m+n=k} w_mn(nu).

    Closed form: e^{-nu} p_k(nu) with p_k the alternating partial sum of
    Laguerre polynomials at 2 nu.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    nu_val = _nu_value(nu)
    ls = laguerre_sequence(k, 2.0 * nu_val)
    p = 0.0
    for s, l in enumerate(ls):
        p += l if s % 2 == 0 else -l
    return math.exp(-nu_val) * p

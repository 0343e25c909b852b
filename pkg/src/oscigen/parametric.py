"""Variable-frequency oscillator (no external force).

Generating function of the transition probabilities:

    G(u, v | rho) = sqrt((1 - rho) / ((1 - uv)^2 - rho (u - v)^2)),

with 0 <= rho <= 1 the excitation parameter.  Transitions connect only
states of equal parity, so w_mn vanishes for odd m + n.  Factoring out
sqrt(1 - rho), every entry has the form

    w_mn(rho) = sqrt(1 - rho) * q_mn(rho),

where q_mn is a polynomial with rational coefficients, divisible by
rho^{|m-n|/2}.  The exact-mode table carries those polynomials, which turns
the weighted integrals over rho into finite Beta-integral sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .domains import FLOAT, poly_domain
from .errors import PrecisionError, SingularEvaluationError
from .probtable import ProbTable, SymbolicTable
from .quadrature import gauss_jacobi_half, gauss_legendre
from .series import Series2, max_window
from .specfun import arctanh

__all__ = [
    "RhoParam",
    "param_gf_value",
    "param_prob_table",
    "param_identity_eq6",
    "param_weighted_integrals",
    "param_jnn",
    "param_j_offdiag",
    "param_sk",
    "param_mean_n",
    "param_dispersion",
    "param_row_moments",
]


@dataclass(frozen=True)
class RhoParam:
    """Validated excitation parameter rho in [0, 1]."""

    value: float

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise ValueError(f"rho must lie in [0, 1], got {self.value}")


def _rho_value(rho, open_top: bool = False) -> float:
    val = rho.value if isinstance(rho, RhoParam) else RhoParam(float(rho)).value
    if open_top and val == 1.0:
        raise ValueError("rho = 1 excluded here (divergent quantity)")
    return val


def _checked_sqrt(z: np.ndarray, what: str) -> np.ndarray:
    """Principal square root after verifying the argument stays off the
    branch cut (the nonpositive real axis)."""
    z = np.asarray(z, dtype=complex)
    on_cut = (z.real <= 0.0) & (np.abs(z.imag) <= 1e-13 * (np.abs(z) + 1.0))
    if np.any(on_cut):
        raise SingularEvaluationError(f"{what} touched the branch cut")
    return np.sqrt(z)


def param_gf_value(u, v, rho) -> complex:
    """Evaluate G(u, v | rho) on the principal branch (value +1 at the
    origin for rho = 0)."""
    rho_val = _rho_value(rho)
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    den = (1.0 - u * v) ** 2 - rho_val * (u - v) ** 2
    out = math.sqrt(1.0 - rho_val) / _checked_sqrt(den, "parametric denominator")
    return complex(out) if out.ndim == 0 else out


# -- series extraction -------------------------------------------------------

def _den_terms(rho=None) -> dict:
    """(1-uv)^2 - rho (u-v)^2 as sparse series terms; ``rho`` is either the
    polynomial indeterminate marker (None) or a float."""
    if rho is None:
        r = poly_domain("rho").variable()
        one = Fraction(1)
        return {
            (0, 0): one,
            (1, 1): -2 + 2 * r,
            (2, 2): one,
            (2, 0): -r,
            (0, 2): -r,
        }
    return {
        (0, 0): 1.0,
        (1, 1): -2.0 + 2.0 * rho,
        (2, 2): 1.0,
        (2, 0): -rho,
        (0, 2): -rho,
    }


@lru_cache(maxsize=32)
def _exact_grid(max_m: int, max_n: int) -> Series2:
    """q_mn polynomials: G / sqrt(1 - rho) expanded over poly[rho]."""
    dom = poly_domain("rho")
    den = Series2.from_terms(dom, max_m, max_n, _den_terms())
    return den.pow_real(Fraction(-1, 2))


@lru_cache(maxsize=128)
def _float_grid(rho_val: float, max_m: int, max_n: int) -> np.ndarray:
    den = Series2.from_terms(FLOAT, max_m, max_n, _den_terms(rho_val))
    return den.pow_real(-0.5).rows


def param_prob_table(rho, size: int = 16, mode: str = "float") -> ProbTable:
    """Table of w_mn(rho); exact mode carries the q_mn polynomials."""
    rho_val = _rho_value(rho)
    if size < 1:
        raise ValueError("size must be positive")
    if mode not in ("float", "exact"):
        raise ValueError(f"unknown mode {mode!r}")
    pref = math.sqrt(1.0 - rho_val)
    if mode == "exact":
        grid = _exact_grid(size - 1, size - 1)
        entries = tuple(tuple(row) for row in grid.rows)
        values = np.array([[pref * float(p(rho_val)) for p in row] for row in entries])
        symbolic = SymbolicTable("sqrt(1-rho)", "rho", entries)
    else:
        if rho_val == 1.0:
            values = np.zeros((size, size))
        else:
            values = pref * _float_grid(rho_val, size - 1, size - 1)
        symbolic = None
    floor = values.min()
    if floor < -1e-12:
        raise AssertionError(f"negative probability {floor:.3e} beyond roundoff")
    values = np.where(values < 0.0, 0.0, values)
    tails = np.maximum(0.0, 1.0 - values.sum(axis=1))
    table = ProbTable("parametric", {"rho": rho_val}, mode, values, tails, symbolic)
    table.validate()
    return table


# -- closed-form identities --------------------------------------------------

@dataclass(frozen=True)
class Eq6Record:
    lhs: float
    rhs: float
    residual: float


def param_identity_eq6(u: float, v: float, n_nodes: int = 64) -> Eq6Record:
    """Integral of G(u, v | rho)/(1 - rho) over rho in [0, 1] against its
    closed form 2 (arctanh u - arctanh v) / (u - v).

    The integrand equals (1-rho)^{-1/2} / sqrt((1-uv)^2 - rho (u-v)^2), so
    the Gauss-Jacobi rule handles the endpoint exactly.  At u = v the right
    side degenerates to the analytic limit 2 / (1 - u^2).
    """
    if not (-1.0 < u < 1.0 and -1.0 < v < 1.0):
        raise ValueError("u, v must lie in (-1, 1)")
    rule = gauss_jacobi_half(n_nodes)
    den = (1.0 - u * v) ** 2 - rule.nodes * (u - v) ** 2
    lhs = float(np.dot(rule.weights, 1.0 / np.sqrt(den)))
    if abs(u - v) < 1e-12:
        rhs = 2.0 / (1.0 - u * u)
    else:
        rhs = 2.0 * (arctanh(u) - arctanh(v)) / (u - v)
    return Eq6Record(lhs, rhs, abs(lhs - rhs))


def _beta_weight_minus_half(kmax: int) -> list[Fraction]:
    """Exact moments of (1-rho)^{-1/2}: integral of rho^k (1-rho)^{-1/2}
    equals k! 2^{k+1} / (2k+1)!!."""
    out = [Fraction(2)]
    for k in range(1, kmax + 1):
        out.append(out[-1] * Fraction(2 * k, 2 * k + 1))
    return out


def _beta_weight_plus_half(kmax: int) -> list[Fraction]:
    """Exact moments of (1-rho)^{1/2}: integral of rho^k sqrt(1-rho) equals
    k! 2^{k+1} / (2k+3)!!."""
    out = [Fraction(2, 3)]
    for k in range(1, kmax + 1):
        out.append(out[-1] * Fraction(2 * k, 2 * k + 3))
    return out


@dataclass(frozen=True)
class WeightedIntegralRecord:
    """Both weighted integrals of one entry, their quadrature confirmations
    and the closed-form values they are usually quoted against.

    The first identity holds and is asserted elsewhere; the second is
    reported only (the computed value and the quoted formula disagree, see
    the verifier's note)."""

    first: Fraction
    first_quad: float
    expected_first: Fraction
    second: Fraction | None
    second_quad: float | None
    expected_second: Fraction | None

    @property
    def first_residual(self) -> float:
        return abs(float(self.first) - self.first_quad)

    @property
    def second_residual(self) -> float | None:
        if self.second is None:
            return None
        return abs(float(self.second) - self.second_quad)


def param_weighted_integrals(m: int, n: int) -> WeightedIntegralRecord:
    """Integrals of w_mn/(1-rho) and w_mn/(rho sqrt(1-rho)) over [0, 1].

    Both reduce to exact finite sums through the polynomial form of w_mn;
    quadrature confirmations ride along.  The second integral is undefined
    for m = n (its fields come back None)."""
    if m < 0 or n < 0:
        raise ValueError("quantum numbers must be nonnegative")
    poly = _exact_grid(m, n).coeff(m, n)
    b1 = _beta_weight_minus_half(max(poly.degree, 0))
    first = sum((c * b1[k] for k, c in enumerate(poly.coeffs)), Fraction(0))
    expected_first = Fraction(1 + (-1) ** (m + n), m + n + 1)

    rule = gauss_jacobi_half((m + n) // 2 + 2)
    qvals = np.array([poly(float(x)) for x in rule.nodes])
    first_quad = float(np.dot(rule.weights, qvals))

    if m == n:
        return WeightedIntegralRecord(first, first_quad, expected_first, None, None, None)

    if (m + n) % 2 == 0:
        reduced = poly.shift_down(1)
    else:
        reduced = poly  # zero polynomial
    second = sum(
        (c * Fraction(1, k + 1) for k, c in enumerate(reduced.coeffs)), Fraction(0)
    )
    lrule = gauss_legendre(max((m + n) // 2 + 1, 2))
    pvals = np.array([reduced(float(x)) for x in lrule.nodes])
    second_quad = float(np.dot(lrule.weights, pvals))
    expected_second = Fraction(1 + (-1) ** (m + n), abs(m - n))
    return WeightedIntegralRecord(
        first, first_quad, expected_first, second, second_quad, expected_second
    )


@dataclass(frozen=True)
class JnnRecord:
    closed_form: Fraction
    symbolic: Fraction
    quadrature: float


def param_jnn(n: int) -> JnnRecord:
    """Plain integral of the diagonal entry w_nn over rho in [0, 1].

    Closed form (1/(2n+1)) [1 + 1/((2n+3)(2n-1))]; the symbolic route sums
    exact sqrt-weight moments of q_nn, the numeric route applies the
    Gauss-Jacobi rule to (1-rho) q_nn(rho)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    closed = Fraction(1, 2 * n + 1) * (1 + Fraction(1, (2 * n + 3) * (2 * n - 1)))
    poly = _exact_grid(n, n).coeff(n, n)
    b3 = _beta_weight_plus_half(max(poly.degree, 0))
    symbolic = sum((c * b3[k] for k, c in enumerate(poly.coeffs)), Fraction(0))
    rule = gauss_jacobi_half(n + 3)
    vals = np.array([(1.0 - float(x)) * poly(float(x)) for x in rule.nodes])
    quad = float(np.dot(rule.weights, vals))
    return JnnRecord(closed, symbolic, quad)


def param_j_offdiag(m: int, n: int) -> float:
    """Plain integral of an off-diagonal entry over rho (no simple closed
    form); Gauss-Jacobi on the factored polynomial."""
    if m == n:
        raise ValueError("use param_jnn for diagonal entries")
    if (m + n) % 2 == 1:
        raise ValueError("odd m + n entries vanish identically")
    poly = _exact_grid(m, n).coeff(m, n)
    rule = gauss_jacobi_half((m + n) // 2 + 3)
    vals = np.array([(1.0 - float(x)) * poly(float(x)) for x in rule.nodes])
    return float(np.dot(rule.weights, vals))


def param_sk(k: int, rho) -> float:
    """Anti-diagonal sum over m + n = k: sqrt(1 - rho) for even k, zero for
    odd k."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    rho_val = _rho_value(rho)
    if k % 2 == 1:
        return 0.0
    return math.sqrt(1.0 - rho_val)


def param_mean_n(m: int, rho) -> float:
    """Mean final quantum number for initial state m:
    -1/2 + (m + 1/2)(1 + rho)/(1 - rho)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    rho_val = _rho_value(rho, open_top=True)
    return -0.5 + (m + 0.5) * (1.0 + rho_val) / (1.0 - rho_val)


@lru_cache(maxsize=256)
def _row_values(m: int, rho_val: float, nmax: int) -> np.ndarray:
    """w_{m,0..nmax} at fixed rho from an asymmetric window (exact in-window
    coefficients)."""
    grid = _float_grid(rho_val, m, nmax)
    return math.sqrt(1.0 - rho_val) * grid[m]


def param_row_moments(m: int, rho, tol: float = 1e-10,
                      power: int = 2) -> tuple[np.ndarray, int]:
    """Truncated row moments (sum n^p w_mn for p = 0..power) with the window
    grown until the estimated missing contribution drops below tol.

    The entries decay geometrically (ratio rho per step of two in n); the
    estimate extrapolates the computed tail with that ratio.  Raises
    PrecisionError when no admissible window reaches the tolerance.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    rho_val = _rho_value(rho, open_top=True)
    nmax = max(4 * m + 16, 32)
    cap = min(max_window(), 4096)
    while True:
        row = _row_values(m, rho_val, nmax)
        nz = np.flatnonzero(row > 0.0)
        est = 0.0
        if nz.size >= 2 and nz[-1] >= nmax - 1:
            last = nz[-1]
            w_last = row[last]
            ratio = row[last] / row[last - 2] if last >= 2 and row[last - 2] > 0 else rho_val
            ratio = min(max(ratio, rho_val), 0.999999)
            # geometric extrapolation of sum (last+2j)^power * w_last * ratio^j
            term = w_last
            j = 1
            while True:
                term *= ratio
                contrib = term * (last + 2 * j) ** power
                est += contrib
                if contrib < est * 1e-16 or j > 100000:
                    break
                j += 1
        if est < tol:
            ns = np.arange(row.size, dtype=float)
            moments = np.array(
                [float(np.dot(ns**p, row)) for p in range(power + 1)]
            )
            return moments, nmax
        if nmax >= cap:
            raise PrecisionError(
                f"row {m} moments at rho={rho_val} not certified to {tol:.1e}", est
            )
        nmax = min(2 * nmax, cap)


def param_dispersion(m: int, rho, tol: float = 1e-10) -> float:
    """Variance of the final quantum number over row m, from truncated table
    moments with tail control."""
    rho_val = _rho_value(rho, open_top=True)
    if rho_val == 0.0:
        return 0.0
    moments, _ = param_row_moments(m, rho_val, tol=tol, power=2)
    return moments[2] - moments[1] ** 2

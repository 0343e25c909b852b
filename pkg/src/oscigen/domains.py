"""Coefficient domains for the truncated series engine.

A domain bundles the ring constants (zero, one) with coercion, zero testing
and inversion for one kind of coefficient:

* ``RATIONAL``      -- exact rationals (``fractions.Fraction``),
* ``poly_domain(p)``-- univariate polynomials in a named parameter with
                       exact rational coefficients (:class:`RatPoly`),
* ``FLOAT``         -- double-precision reals,
* ``COMPLEX``       -- double-precision complex numbers.

Elements themselves carry the arithmetic through the usual operators, so the
series code stays generic.  The two numeric domains flag themselves with a
numpy dtype, which the series engine uses to switch to vectorized rows.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import SingularSeriesError

__all__ = [
    "RatPoly",
    "Domain",
    "RationalDomain",
    "PolyDomain",
    "FloatDomain",
    "ComplexDomain",
    "RATIONAL",
    "FLOAT",
    "COMPLEX",
    "poly_domain",
]


class RatPoly:
    """Immutable univariate polynomial with Fraction coefficients.

    Coefficients are stored in ascending powers with no trailing zeros, so
    the zero polynomial has an empty coefficient tuple and equality is
    structural.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("RatPoly is immutable")

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, RatPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == RatPoly((other,))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RatPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return RatPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RatPoly()
            return RatPoly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, RatPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        return NotImplemented

    def shift_down(self, k: int) -> "RatPoly":
        """Divide by the k-th power of the variable; the low coefficients must
        vanish."""
        if any(c != 0 for c in self.coeffs[:k]):
            raise ValueError("polynomial not divisible by variable power")
        return RatPoly(self.coeffs[k:])

    def __call__(self, x):
        """Horner evaluation; exact for Fraction arguments."""
        acc = x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def format(self, var: str) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c}*{var}")
            else:
                parts.append(f"{c}*{var}^{k}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"RatPoly({self.format('p')})"


def _as_poly(x):
    if isinstance(x, RatPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return RatPoly((x,))
    return NotImplemented


class Domain:
    """Commutative-ring contract used by the series engine.

    ``dtype`` is None for exact (object-coefficient) domains and a numpy
    dtype for the two hardware domains.
    """

    name: str
    dtype = None

    def coerce(self, x):
        raise NotImplementedError

    def is_zero(self, x) -> bool:
        return not self.coerce(x) != self.zero  # pragma: no cover

    def invert(self, x):
        raise NotImplementedError

    @property
    def exact(self) -> bool:
        return self.dtype is None

    def __repr__(self):
        return f"<domain {self.name}>"


class RationalDomain(Domain):
    name = "rational"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into exact rationals")

    def is_zero(self, x) -> bool:
        return x == 0

    def invert(self, x):
        if x == 0:
            raise SingularSeriesError("zero is not invertible")
        return Fraction(1) / x


class PolyDomain(Domain):
    """Polynomials in one named parameter over the rationals.

    Only constant polynomials are units, which is exactly what the
    generating-function factorizations need: non-constant prefactors are kept
    outside the series.
    """

    zero = RatPoly()
    one = RatPoly((1,))

    def __init__(self, var: str):
        self.var = var
        self.name = f"poly[{var}]"

    def coerce(self, x):
        if isinstance(x, RatPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return RatPoly((x,))
        raise TypeError(f"cannot coerce {type(x).__name__} into {self.name}")

    def is_zero(self, x) -> bool:
        return not x

    def invert(self, x):
        x = self.coerce(x)
        if x.degree != 0:
            raise SingularSeriesError(
                f"{x!r} is not a unit in {self.name}; only nonzero constants invert"
            )
        return RatPoly((Fraction(1) / x.coeffs[0],))

    def variable(self) -> RatPoly:
        return RatPoly((0, 1))


class FloatDomain(Domain):
    name = "float"
    zero = 0.0
    one = 1.0
    dtype = np.float64

    def coerce(self, x):
        if isinstance(x, complex):
            raise TypeError("complex value in real domain")
        return float(x)

    def is_zero(self, x) -> bool:
        return x == 0.0

    def invert(self, x):
        if x == 0.0:
            raise SingularSeriesError("zero is not invertible")
        return 1.0 / x


class ComplexDomain(Domain):
    name = "complex"
    zero = 0.0 + 0.0j
    one = 1.0 + 0.0j
    dtype = np.complex128

    def coerce(self, x):
        return complex(x)

    def is_zero(self, x) -> bool:
        return x == 0.0

    def invert(self, x):
        if x == 0.0:
            raise SingularSeriesError("zero is not invertible")
        return 1.0 / complex(x)


RATIONAL = RationalDomain()
FLOAT = FloatDomain()
COMPLEX = ComplexDomain()

_poly_cache: dict[str, PolyDomain] = {}


def poly_domain(var: str) -> PolyDomain:
    """Shared PolyDomain instance for a parameter name (``"nu"``, ``"rho"``)."""
    try:
        return _poly_cache[var]
    except KeyError:
        dom = _poly_cache.setdefault(var, PolyDomain(var))
        return dom

"""Exact scalars and univariate polynomials.

Scalars are :class:`fractions.Fraction` (always reduced, positive
denominator).  Complex values are plain Python ``complex`` and only ever
feed approximate computations such as root residuals.

The zero polynomial is the polynomial with an empty coefficient tuple.  Its
``degree`` is ``-1``; anything that needs a genuine degree calls
:meth:`Polynomial.require_nonzero` first and gets a
:class:`ZeroPolynomialError`.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Tuple, Union

Scalar = Union[int, Fraction]


class InterpolationError(ValueError):
    """Interpolation data is unusable (empty, or repeated abscissae)."""


class ZeroPolynomialError(ValueError):
    """An operation needing a degree received the zero polynomial."""


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and exact decimal strings like ``"3/4"``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


def binomial(n: int, k: int) -> int:
    """Generalized binomial coefficient n(n-1)...(n-k+1)/k! for integer n.

    >>> binomial(4, 2), binomial(1, 2), binomial(-1, 3)
    (6, 0, -1)
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    num = 1
    den = 1
    for i in range(k):
        num *= n - i
        den *= i + 1
    return num // den


@dataclass(frozen=True)
class Polynomial:
    """Exact polynomial; ``coefficients[i]`` multiplies ``t**i``."""

    coefficients: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        coeffs = [as_rational(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar], scale: Scalar = 1) -> "Polynomial":
        p = cls((as_rational(scale),))
        for r in roots:
            p = p * cls((-as_rational(r), Fraction(1)))
        return p

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def leading_coefficient(self) -> Fraction:
        self.require_nonzero()
        return self.coefficients[-1]

    def require_nonzero(self) -> "Polynomial":
        if self.is_zero:
            raise ZeroPolynomialError("operation undefined for the zero polynomial")
        return self

    def coefficient(self, i: int) -> Fraction:
        if 0 <= i < len(self.coefficients):
            return self.coefficients[i]
        return Fraction(0)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coefficients), len(other.coefficients))
        return Polynomial(tuple(self.coefficient(i) + other.coefficient(i) for i in range(n)))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + other.scale(-1)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        if self.is_zero or other.is_zero:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "Polynomial":
        c = as_rational(c)
        return Polynomial(tuple(c * a for a in self.coefficients))

    def __call__(self, t):
        if isinstance(t, complex):
            return poly_eval_complex(self, t)
        return poly_eval(self, t)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = "t" if i == 1 else f"t^{i}"
                if mag == 1:
                    body = mono
                elif mag.denominator == 1:
                    body = f"{mag}{mono}"
                else:
                    body = f"({mag}){mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += sign + body
        return out


def poly_eval(p: Polynomial, t: Scalar) -> Fraction:
    """Horner evaluation in exact arithmetic."""
    t = as_rational(t)
    acc = Fraction(0)
    for c in reversed(p.coefficients):
        acc = acc * t + c
    return acc


def poly_eval_complex(p: Polynomial, z: complex) -> complex:
    """Horner evaluation with coefficients rounded to double precision.

    Only meant for residuals; never use it to make an exact decision.
    """
    z = complex(z)
    acc = 0j
    for c in reversed(p.coefficients):
        acc = acc * z + float(c)
    if not cmath.isfinite(acc):
        raise OverflowError(f"complex evaluation overflowed at z={z!r}")
    return acc


def lagrange_interpolate(points: Sequence[Tuple[Scalar, Scalar]]) -> Polynomial:
    """Unique polynomial of degree < len(points) through ``points``, exactly."""
    if not points:
        raise InterpolationError("no interpolation points")
    xs = [as_rational(x) for x, _ in points]
    ys = [as_rational(y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise InterpolationError("interpolation abscissae must be distinct")
    result = Polynomial()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        others = [x for j, x in enumerate(xs) if j != i]
        denom = Fraction(1)
        for x in others:
            denom *= xi - x
        result = result + Polynomial.from_roots(others, yi / denom)
    return result

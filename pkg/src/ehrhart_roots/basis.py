"""The binomial basis C(t+d-j, d), j = 0..d, and h*-vectors.

A degree-d polynomial f is written as f(t) = sum_j h_j C(t+d-j, d).  The same
h_j are the numerator of the rational generating function

    sum_{t>=0} f(t) x^t = (h_0 + h_1 x + ... + h_d x^d) / (1-x)^(d+1),

so multiplying the value series by (1-x)^(d+1) gives the closed form

    h_j = sum_{i=0}^{j} (-1)^i C(d+1, i) f(j-i).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .exactcore import Polynomial, Scalar, as_rational, binomial, poly_eval


@dataclass(frozen=True)
class HStarVector:
    entries: Tuple[Fraction, ...]
    all_nonnegative: bool = field(init=False)

    def __post_init__(self):
        entries = tuple(as_rational(h) for h in self.entries)
        if not entries:
            raise ValueError("an h*-vector needs at least one entry")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "all_nonnegative", all(h >= 0 for h in entries))

    @classmethod
    def of(cls, *entries: Scalar) -> "HStarVector":
        return cls(tuple(entries))

    @property
    def degree(self) -> int:
        return len(self.entries) - 1

    @property
    def all_integral(self) -> bool:
        return all(h.denominator == 1 for h in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, j):
        return self.entries[j]

    def as_ints(self) -> List[int]:
        if not self.all_integral:
            raise ValueError(f"h*-vector has non-integer entries: {self}")
        return [int(h) for h in self.entries]

    def __str__(self) -> str:
        return "[" + ",".join(str(h) for h in self.entries) + "]"


@dataclass(frozen=True)
class BasisElement:
    degree: int
    shift: int
    expansion: Polynomial

    @property
    def integer_roots(self) -> Tuple[int, ...]:
        return tuple(range(self.shift - self.degree, self.shift))


@lru_cache(maxsize=512)
def basis_element(d: int, j: int) -> BasisElement:
    """Monomial expansion of C(t+d-j, d) = (t+d-j)(t+d-j-1)...(t-j+1)/d!."""
    if d < 1:
        raise ValueError(f"degree must be positive, got {d}")
    if not 0 <= j <= d:
        raise ValueError(f"shift j={j} outside [0, {d}]")
    roots = range(j - d, j)
    expansion = Polynomial.from_roots(roots, Fraction(1, math.factorial(d)))
    return BasisElement(d, j, expansion)


def basis_polynomials(d: int) -> List[Polynomial]:
    return [basis_element(d, j).expansion for j in range(d + 1)]


def from_hstar(h: HStarVector) -> Polynomial:
    d = h.degree
    if d == 0:
        return Polynomial((h[0],))
    out = Polynomial()
    for j, hj in enumerate(h):
        if hj:
            out = out + basis_element(d, j).expansion.scale(hj)
    return out


def to_hstar(p: Polynomial, d: int | None = None) -> HStarVector:
    """Coordinates of ``p`` in the degree-``d`` binomial basis.

    ``d`` defaults to ``deg p`` and may exceed it; a smaller ``d`` is
    rejected.
    """
    if d is None:
        d = max(p.degree, 0)
    if p.degree > d:
        raise ValueError(f"polynomial of degree {p.degree} has no h*-vector of length {d + 1}")
    if d < 0:
        raise ValueError("d must be non-negative")
    return hstar_from_values([poly_eval(p, t) for t in range(d + 1)])


def series_coefficients(h: HStarVector, count: int) -> List[Fraction]:
    """First ``count`` coefficients of (sum_j h_j x^j) / (1-x)^(d+1)."""
    if count < 1:
        raise ValueError("count must be positive")
    d = h.degree
    # (1-x)^-(d+1) = sum_t C(t+d, d) x^t
    denom_series = [binomial(t + d, d) for t in range(count)]
    return [
        sum((h[j] * denom_series[t - j] for j in range(min(t, d) + 1)), Fraction(0))
        for t in range(count)
    ]


def basis_root_multiset(d: int) -> Dict[int, int]:
    """Multiplicity of each integer r as a root across all of B_d."""
    if d < 1:
        raise ValueError(f"degree must be positive, got {d}")
    # C(t+d-j, d) vanishes exactly at t = j-d, ..., j-1
    counts = Counter(r for j in range(d + 1) for r in range(j - d, j))
    return {r: counts[r] for r in range(-d, d)}


def hstar_from_values(values: Sequence[Scalar]) -> HStarVector:
    """h*-vector of the degree <= len(values)-1 polynomial with f(t) = values[t]."""
    d = len(values) - 1
    vals = [as_rational(v) for v in values]
    return HStarVector(tuple(
        sum(((-1) ** i * binomial(d + 1, i) * vals[j - i] for i in range(j + 1)), Fraction(0))
        for j in range(d + 1)
    ))

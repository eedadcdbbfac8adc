"""Root-norm bounds for non-negative combinations of C(t+d-j, d).

Every root of such a combination lies in the closed disc |z + 1/2| <= d(d - 1/2).
The argument is constructive: for z outside the disc, the 2d numbers
z+d, ..., z-d+1 sit in a disk of radius d - 1/2 about z + 1/2 that subtends
an angle below pi/d at the origin, so the d+1 values C(z+d-j, d) (products of
d consecutive such numbers, over d!) all fit in an open half-plane through 0
and no non-negative non-trivial combination of them can vanish.

:func:`halfplane_certificate` produces that half-plane explicitly, and
:func:`generalized_halfplane_test` runs the same test for any basis of
equal-degree polynomials with positive leading coefficients.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .exactcore import Polynomial, poly_eval_complex
from .roots import RootSet

TWO_PI = 2 * math.pi
SCAN_BUDGET = 10**7


class OriginInsideFactorDiskError(ValueError):
    """The origin lies in the disk around z + 1/2; the angular width is undefined."""


@dataclass(frozen=True)
class DiscBound:
    degree: int
    radius: Fraction
    center: complex = complex(-0.5, 0.0)

    @property
    def radius_float(self) -> float:
        return float(self.radius)

    def distance(self, z: complex) -> float:
        return abs(complex(z) + 0.5)

    def slack(self, z: complex) -> float:
        return self.radius_float - self.distance(z)

    def contains(self, z: complex, margin: float = 0.0) -> bool:
        return self.slack(z) >= -margin


@dataclass(frozen=True)
class FactorPoints:
    z: complex
    degree: int
    points: Tuple[complex, ...]

    @property
    def enclosing_center(self) -> complex:
        return self.z + 0.5

    @property
    def enclosing_radius(self) -> Fraction:
        return Fraction(2 * self.degree - 1, 2)

    @property
    def half_integer_offsets(self) -> Tuple[Fraction, ...]:
        """Exact real offsets of the points from z + 1/2."""
        return tuple(Fraction(2 * (self.degree - k) - 1, 2) for k in range(2 * self.degree))


@dataclass(frozen=True)
class HalfPlaneCertificate:
    z: complex
    degree: int
    basis_values: Tuple[complex, ...]
    arguments: Tuple[float, ...]
    max_gap: float
    separating_direction: Optional[float]
    valid: bool
    zero_value: bool

    def inner_products(self) -> List[float]:
        if self.separating_direction is None:
            return []
        u = cmath.exp(1j * self.separating_direction)
        return [(v * u.conjugate()).real for v in self.basis_values]


@dataclass(frozen=True)
class RootCheck:
    root: complex
    slack: float
    in_disc: bool
    distance: float = 0.0  # |z + 1/2|
    re_offset: float = 0.0  # |Re z + 1/2|


@dataclass(frozen=True)
class CheckSummary:
    roots: int
    violations: int
    min_slack: Optional[float]
    max_distance: float
    max_re_offset: float


@dataclass(frozen=True)
class ScanGrid:
    re: np.ndarray
    im: np.ndarray
    valid: np.ndarray  # shape (len(im), len(re))

    def rows(self):
        for i, y in enumerate(self.im):
            for j, x in enumerate(self.re):
                yield float(x), float(y), bool(self.valid[i, j])


def braun_disc(d: int) -> DiscBound:
    if d < 1:
        raise ValueError(f"degree must be positive, got {d}")
    return DiscBound(d, Fraction(d * (2 * d - 1), 2))


def bddps_bound(d: int) -> int:
    """The earlier norm bound 1 + (d+1)! on Ehrhart polynomial roots."""
    if d < 1:
        raise ValueError(f"degree must be positive, got {d}")
    return 1 + math.factorial(d + 1)


def angular_width(z: complex, d: int) -> float:
    """Angle subtended at 0 by the disk of radius d - 1/2 around z + 1/2."""
    dist = abs(complex(z) + 0.5)
    if dist <= d - 0.5:
        raise OriginInsideFactorDiskError(
            f"|z + 1/2| = {dist!r} does not exceed d - 1/2 = {d - 0.5}")
    return 2 * math.asin((d - 0.5) / dist)


def angular_limit(d: int) -> float:
    """pi / d: the widest angle d factor disks may subtend while B_d(z) stays in a half-plane."""
    return math.pi / d


def factor_points(z: complex, d: int) -> FactorPoints:
    z = complex(z)
    return FactorPoints(z, d, tuple(z + (d - k) for k in range(2 * d)))


def _gap_test(values: Sequence[complex]):
    """Arguments, max circular gap, and the bisector of the occupied arc."""
    args = tuple(cmath.phase(v) for v in values)
    if any(v == 0 for v in values):
        return args, 0.0, None, True
    srt = sorted(args)
    gaps = [b - a for a, b in zip(srt, srt[1:])] + [srt[0] + TWO_PI - srt[-1]]
    k = max(range(len(gaps)), key=gaps.__getitem__)
    max_gap = gaps[k]
    # the occupied arc runs from srt[k+1] counter-clockwise to srt[k]
    arc_start = srt[(k + 1) % len(srt)]
    direction = arc_start + (TWO_PI - max_gap) / 2
    direction = math.remainder(direction, TWO_PI)
    if direction == -math.pi:
        direction = math.pi
    return args, max_gap, direction, False


def halfplane_certificate(z: complex, d: int) -> HalfPlaneCertificate:
    """Witness that C(z+d-j, d), j = 0..d, lie in one open half-plane through 0.

    ``separating_direction`` is the angle of the half-plane's inward normal:
    the bisector of the smallest arc holding every argument.  Each basis
    value then has positive inner product with ``exp(i * direction)``.
    """
    if d < 1:
        raise ValueError(f"degree must be positive, got {d}")
    pts = factor_points(z, d).points
    fact = math.factorial(d)
    values = []
    for j in range(d + 1):
        prod = complex(1.0)
        for f in pts[j:j + d]:
            prod *= f
        values.append(prod / fact)
    args, max_gap, direction, zero = _gap_test(values)
    valid = not zero and max_gap > math.pi
    if valid:
        u = cmath.exp(1j * direction)
        valid = all((v * u.conjugate()).real > 0 for v in values)
    return HalfPlaneCertificate(complex(z), d, tuple(values), args, max_gap,
                                direction if valid else None, valid, zero)


def verify_roots(rs: RootSet, d: int, margin: float = 1e-9) -> List[RootCheck]:
    if not rs.converged:
        raise ValueError("disc verification needs a converged root set")
    disc = braun_disc(d)
    return [RootCheck(z, disc.slack(z), disc.contains(z, margin), disc.distance(z), abs(z.real + 0.5))
            for z in rs.roots]


def summarize_checks(checks: Sequence[RootCheck]) -> CheckSummary:
    return CheckSummary(
        len(checks),
        sum(not c.in_disc for c in checks),
        min((c.slack for c in checks), default=None),
        max((c.distance for c in checks), default=0.0),
        max((c.re_offset for c in checks), default=0.0),
    )


@dataclass(frozen=True)
class GeneralizedResult:
    valid: bool
    max_gap: float


def _check_basis(basis: Sequence[Polynomial]) -> int:
    if not basis:
        raise ValueError("basis must be non-empty")
    degrees = {p.degree for p in basis}
    if len(degrees) != 1:
        raise ValueError(f"basis polynomials have mixed degrees {sorted(degrees)}")
    d = degrees.pop()
    if d < 1:
        raise ValueError("basis polynomials must have degree >= 1")
    if any(p.leading_coefficient <= 0 for p in basis):
        raise ValueError("basis leading coefficients must be positive")
    return d


def generalized_halfplane_test(basis: Sequence[Polynomial], z: complex) -> GeneralizedResult:
    """Half-plane test for an arbitrary equal-degree basis at one point."""
    _check_basis(basis)
    values = [poly_eval_complex(p, z) for p in basis]
    _, max_gap, _, zero = _gap_test(values)
    return GeneralizedResult(not zero and max_gap > math.pi, max_gap)


def _axis(lo: float, hi: float, step: float) -> np.ndarray:
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(count)


def bound_region_scan(basis: Sequence[Polynomial], re_min: float, re_max: float,
                      im_min: float, im_max: float, step: float) -> ScanGrid:
    """Half-plane verdict at every grid point; True marks a certified root-free point."""
    if step <= 0:
        raise ValueError("step must be positive")
    if re_max < re_min or im_max < im_min:
        raise ValueError("grid bounds are reversed")
    _check_basis(basis)
    re = _axis(re_min, re_max, step)
    im = _axis(im_min, im_max, step)
    if len(re) * len(im) > SCAN_BUDGET:
        raise ValueError(f"grid has {len(re) * len(im)} points, budget is {SCAN_BUDGET}")
    Z = re[None, :] + 1j * im[:, None]
    values = []
    for p in basis:
        acc = np.zeros_like(Z)
        for c in reversed(p.coefficients):
            acc = acc * Z + float(c)
        values.append(acc)
    V = np.stack(values)
    zero = np.any(V == 0, axis=0)
    args = np.sort(np.angle(V), axis=0)
    gaps = np.diff(args, axis=0)
    wrap = args[0] + TWO_PI - args[-1]
    max_gap = np.maximum(gaps.max(axis=0), wrap) if len(basis) > 1 else wrap
    return ScanGrid(re, im, (~zero) & (max_gap > math.pi))

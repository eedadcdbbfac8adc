"""All complex roots of a polynomial by Aberth-Ehrlich simultaneous iteration.

Every root estimate is refined at once, so no deflation error accumulates.
Initial guesses sit on the circle of radius 1 + max|a_i/a_d| (which encloses
every root), equally spaced and rotated by an irrational phase so no guess
lands on a symmetry axis of a real polynomial.

Multiple roots are ill-conditioned in double precision: a k-fold root
spreads into a cluster of width ~eps**(1/k) and the iteration stagnates
instead of meeting ``tol``.  The run still counts as
converged once each estimate's backward error is at rounding level.
Clusters that pass a derivative test are then replaced by one multiple
root (see :func:`_snap_clusters`); ``multiplicity_suspected`` records that
this happened.  Remaining simple roots get a few Newton steps against the
exact rational coefficients (see :func:`_polish`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .exactcore import Polynomial

_PHASE = math.sqrt(2) / 2  # radians; irrational, so not a rational multiple of pi
_BACKWARD_ULPS = 8
_CLUSTER_RADIUS = 0.05
_MULTIPLE_ROOT_TOL = 1e-10


@dataclass(frozen=True)
class RootSet:
    roots: Tuple[complex, ...]
    residuals: Tuple[float, ...]
    iterations_used: int
    converged: bool
    multiplicity_suspected: bool = False
    max_step: float = 0.0

    @property
    def max_residual(self) -> float:
        return max(self.residuals, default=0.0)


@dataclass(frozen=True)
class VietaReport:
    sum_error: float
    product_error: float
    sum_target: float
    product_target: float


def _float_coeffs(p: Polynomial) -> np.ndarray:
    return np.array([float(c) for c in p.coefficients], dtype=float)


def _horner(c: np.ndarray, z: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Values and derivatives at every point of ``z``."""
    val = np.zeros_like(z)
    der = np.zeros_like(z)
    # diverging estimates overflow; callers treat non-finite values explicitly
    with np.errstate(over="ignore", invalid="ignore"):
        for a in c[::-1]:
            der = der * z + val
            val = val * z + a
    return val, der


def residual_scale(p: Polynomial) -> float:
    return 1.0 + max(abs(float(a)) for a in p.coefficients)


class _ExactPoly:
    """Exact evaluation of p and p' at binary floating-point points.

    Denominators are cleared once; a point z = (X + iY) / 2^k then makes
    Horner's rule pure integer arithmetic on the homogenized polynomial, and
    Python's int / int division rounds the final quotients correctly.
    """

    def __init__(self, p: Polynomial):
        den = math.lcm(*(a.denominator for a in p.coefficients))
        self.den = den
        self.coeffs = [int(a * den) for a in p.coefficients]
        self.deriv = [i * a for i, a in enumerate(self.coeffs)][1:]

    @staticmethod
    def _split(z: complex):
        (xn, xd), (yn, yd) = z.real.as_integer_ratio(), z.imag.as_integer_ratio()
        k = max(xd, yd).bit_length() - 1
        return xn * (1 << k) // xd, yn * (1 << k) // yd, k

    @staticmethod
    def _horner(coeffs, X: int, Y: int, k: int):
        m = len(coeffs) - 1
        vr, vi = coeffs[-1], 0
        for i in range(m - 1, -1, -1):
            vr, vi = vr * X - vi * Y + (coeffs[i] << (k * (m - i))), vr * Y + vi * X
        return vr, vi

    def abs_value(self, z: complex) -> float:
        X, Y, k = self._split(z)
        vr, vi = self._horner(self.coeffs, X, Y, k)
        den = self.den << (k * (len(self.coeffs) - 1))
        try:
            return math.hypot(vr / den, vi / den)
        except OverflowError:
            return math.inf

    def newton_step(self, z: complex) -> Optional[complex]:
        """p(z)/p'(z), or None where p' vanishes."""
        X, Y, k = self._split(z)
        pr, pi = self._horner(self.coeffs, X, Y, k)
        qr, qi = self._horner(self.deriv, X, Y, k)
        norm = (qr * qr + qi * qi) << k
        if norm == 0:
            return None
        return complex((pr * qr + pi * qi) / norm, (pi * qr - pr * qi) / norm)


def _residuals(p: _ExactPoly, z: np.ndarray, scale: float) -> np.ndarray:
    # exact evaluation: float Horner noise near large roots can exceed the residual itself
    return np.array([p.abs_value(complex(w)) if np.isfinite(w) else math.inf
                     for w in z]) / scale


def _pair_conjugates(z: np.ndarray, tol: float) -> np.ndarray:
    """Make the multiset exactly conjugate-closed.

    Each root is matched with the nearest unmatched conjugate of another;
    a matched pair is replaced by its mean and that mean's conjugate, a
    root matched with itself becomes real.
    """
    z = z.copy()
    unmatched = list(range(len(z)))
    out = np.empty_like(z)
    while unmatched:
        i = unmatched.pop(0)
        if abs(z[i].imag) <= tol * (1 + abs(z[i])):
            out[i] = z[i].real
            continue
        if not unmatched:
            out[i] = z[i].real
            continue
        dists = [abs(z[i] - np.conj(z[j])) for j in unmatched]
        j = unmatched.pop(int(np.argmin(dists)))
        m = (z[i] + np.conj(z[j])) / 2
        out[i], out[j] = m, np.conj(m)
    return out


def find_roots(p: Polynomial, tol: float = 1e-12, max_iter: int = 500,
               residual_tol: float = 1e-8) -> RootSet:
    """All ``deg p`` complex roots of ``p``.

    A root estimate stops moving once its Aberth step is below
    ``tol * (1 + |z|)`` or its backward error
    ``|p(z)| / sum_i |a_i| |z|^i`` reaches rounding level; the run converges
    when every estimate has stopped and every residual
    ``|p(z)| / (1 + max|a_i|)``, with p(z) evaluated exactly, is at most
    ``residual_tol``.
    """
    p.require_nonzero()
    d = p.degree
    if d < 1:
        raise ValueError("a constant polynomial has no roots")
    c = _float_coeffs(p)
    abs_c = np.abs(c)
    lead = c[-1]
    radius = 1.0 + max(abs(a / lead) for a in c[:-1])
    k = np.arange(d)
    z = radius * np.exp(1j * (2 * np.pi * k / d + _PHASE))
    noise_floor = _BACKWARD_ULPS * np.finfo(float).eps

    active = np.ones(d, dtype=bool)
    max_step = math.inf
    it = 0
    for it in range(1, max_iter + 1):
        val, der = _horner(c, z)
        scale, _ = _horner(abs_c, np.abs(z).astype(complex))
        at_noise = np.abs(val) <= noise_floor * scale.real
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = val / der
            step = w / (1.0 - w * s)
        # p(z)==0 exactly: root found; p'(z)==0: nudge off the critical point
        step = np.where(val == 0, 0, step)
        bad = ~np.isfinite(step)
        if bad.any():
            step[bad] = 1e-3 * (1 + np.abs(z[bad])) * np.exp(1j * _PHASE)
        rel = np.abs(step) / (1 + np.abs(z))
        step = np.where(active & ~at_noise, step, 0)
        z = z - step
        max_step = float(np.max(np.where(active, rel, 0.0)))
        done = active & ((rel < tol) | at_noise)
        active &= ~done
        if not active.any():
            break

    z, snapped = _snap_clusters(c, z)
    exact = _ExactPoly(p)
    z = _polish(exact, z, snapped)
    z = _pair_conjugates(z, 1e-8)
    res = _residuals(exact, z, residual_scale(p))
    converged = not active.any() and bool(np.all(res <= residual_tol))
    order = np.lexsort((z.imag, z.real))
    z, res = z[order], res[order]
    return RootSet(tuple(complex(x) for x in z), tuple(float(r) for r in res),
                   it, converged, bool(snapped.any()), max_step)


def _derivative(c: np.ndarray) -> np.ndarray:
    return c[1:] * np.arange(1, len(c))


def _backward_error(c: np.ndarray, z: complex) -> float:
    val, _ = _horner(c, np.array([z]))
    scale, _ = _horner(np.abs(c), np.array([abs(z)], dtype=complex))
    return abs(val[0]) / scale[0].real if scale[0].real else 0.0


def _snap_clusters(c: np.ndarray, z: np.ndarray):
    """Replace each cluster that is a numerically multiple root by that root.

    Estimates closer than ``_CLUSTER_RADIUS * (1 + |z|)`` are grouped.  For a
    group of k, Newton's method on p^(k-1) refines the centroid; the group is
    snapped to k copies of the result only if p, p', ..., p^(k-1) all vanish
    there to ``_MULTIPLE_ROOT_TOL`` backward error.
    """
    d = len(z)
    parent = list(range(d))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(d):
        for j in range(i + 1, d):
            if abs(z[i] - z[j]) <= _CLUSTER_RADIUS * (1 + max(abs(z[i]), abs(z[j]))):
                parent[find(i)] = find(j)
    groups = {}
    for i in range(d):
        groups.setdefault(find(i), []).append(i)
    z = z.copy()
    snapped = np.zeros(d, dtype=bool)
    for members in groups.values():
        k = len(members)
        if k < 2:
            continue
        derivs = [c]
        for _ in range(k - 1):
            derivs.append(_derivative(derivs[-1]))
        q, dq = derivs[-1], _derivative(derivs[-1])
        center = complex(np.mean(z[members]))
        for _ in range(20):
            val, _ = _horner(q, np.array([center]))
            der, _ = _horner(dq, np.array([center]))
            if der[0] == 0:
                break
            step = val[0] / der[0]
            center -= step
            if abs(step) <= np.finfo(float).eps * (1 + abs(center)):
                break
        if all(_backward_error(q_j, center) <= _MULTIPLE_ROOT_TOL for q_j in derivs):
            z[members] = center
            snapped[members] = True
    return z, snapped


def _polish(p: _ExactPoly, z: np.ndarray, skip: np.ndarray, steps: int = 3) -> np.ndarray:
    """Newton steps on the exact polynomial for every simple root.

    Double-precision Horner limits ill-conditioned roots (such as the
    consecutive integers of a simplex) to far worse than one ulp; with p and
    p' evaluated exactly, Newton recovers nearly full precision.  A step is
    refused if it would move a root a tenth of the way toward its neighbour.
    """
    z = z.copy()
    for i in range(len(z)):
        if skip[i]:
            continue
        others = np.delete(z, i)
        gap = float(np.min(np.abs(others - z[i]))) if len(others) else math.inf
        for _ in range(steps):
            step = p.newton_step(complex(z[i]))
            if step is None or not (abs(step) < 0.1 * gap):
                break
            z[i] -= step
            if abs(step) <= np.finfo(float).eps * abs(z[i]):
                break
    return z


def vieta_check(p: Polynomial, rs: RootSet) -> VietaReport:
    """Compare the roots' sum and product with -a_{d-1}/a_d and (-1)^d a_0/a_d."""
    if not rs.converged:
        raise ValueError("Vieta check needs a converged root set")
    d = p.degree
    lead = p.leading_coefficient
    sum_target = float(-p.coefficient(d - 1) / lead)
    product_target = float((-1) ** d * p.coefficient(0) / lead)
    total = complex(math.fsum(z.real for z in rs.roots), math.fsum(z.imag for z in rs.roots))
    prod = complex(1.0)
    for z in rs.roots:
        prod *= z
    return VietaReport(abs(total - sum_target), abs(prod - product_target),
                       sum_target, product_target)

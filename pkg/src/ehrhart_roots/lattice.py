"""Lattice polytopes, lattice-point counts of dilates, and Ehrhart polynomials.

Polytopes are given by integer vertices.  Membership tests use an exact
H-representation: integer equations cutting out the affine span plus
integer facet inequalities.  The facet inequalities live on ``d`` pivot
coordinates of the span (projection onto them is an affine bijection of the
span), so every stored inequality is integral and valid in ambient space.

Counting enumerates the integer points of the bounding box of ``tP``
coordinate by coordinate.  Before a coordinate is fixed its range is
narrowed by every inequality, using the box to bound what the remaining
coordinates can contribute; the last coordinate's admissible range is counted
directly instead of being enumerated.  The count is the same as testing every
box point; only candidates that cannot possibly satisfy the inequalities are
skipped.
"""

from __future__ import annotations

import itertools
import math
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from numba import njit

from .basis import HStarVector, to_hstar
from .exactcore import Polynomial, lagrange_interpolate, poly_eval

DEFAULT_BUDGET = 10**8
MAX_SEARCH_DIM = 6
# above this many vertex subsets "auto" facet derivation switches to double description
SEARCH_SUBSET_LIMIT = 20_000
_INT64_SAFE = 1 << 62

IntVector = Tuple[int, ...]


class BudgetExceededError(RuntimeError):
    def __init__(self, required: int, budget: int, visited: Optional[int] = None):
        self.required = required
        self.budget = budget
        self.visited = visited
        msg = f"enumeration needs up to {required} candidate points, budget is {budget}"
        if visited is not None:
            msg += f" (aborted after visiting {visited})"
        super().__init__(msg)


class ConsistencyError(RuntimeError):
    """A result contradicts Ehrhart's or Stanley's theorem: a counting bug."""


class FacetDerivationError(ValueError):
    pass


@dataclass(frozen=True)
class Halfspace:
    """``normal . x <= offset`` with integer data."""

    normal: IntVector
    offset: int

    def contains(self, x: Sequence[int], t: int = 1) -> bool:
        return sum(a * xi for a, xi in zip(self.normal, x)) <= t * self.offset


@dataclass(frozen=True)
class Hyperplane:
    """``normal . x == offset`` with integer data."""

    normal: IntVector
    offset: int


@dataclass(frozen=True)
class LatticePolytope:
    vertices: Tuple[IntVector, ...]
    facets: Optional[Tuple[Halfspace, ...]] = None
    equations: Optional[Tuple[Hyperplane, ...]] = None
    ambient_dim: int = field(init=False)
    affine_dim: int = field(init=False)

    def __post_init__(self):
        verts = []
        for v in self.vertices:
            row = []
            for c in v:
                if isinstance(c, (float, np.floating)) and not float(c).is_integer():
                    raise ValueError(f"vertex {tuple(v)} is not a lattice point")
                if isinstance(c, Fraction) and c.denominator != 1:
                    raise ValueError(f"vertex {tuple(v)} is not a lattice point")
                row.append(int(c))
            verts.append(tuple(row))
        if not verts:
            raise ValueError("a polytope needs at least one vertex")
        n = len(verts[0])
        if n == 0 or any(len(v) != n for v in verts):
            raise ValueError("vertices must be non-empty vectors of one common length")
        verts = tuple(dict.fromkeys(verts))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "ambient_dim", n)
        object.__setattr__(self, "affine_dim", _rank([_sub(v, verts[0]) for v in verts[1:]]))

    def with_facets(self) -> "LatticePolytope":
        return self if self.facets is not None else derive_facets(self)

    def contains(self, x: Sequence[int], t: int = 1) -> bool:
        P = self.with_facets()
        if self.affine_dim == 0:
            return tuple(x) == tuple(t * c for c in self.vertices[0])
        if any(sum(a * xi for a, xi in zip(e.normal, x)) != t * e.offset for e in P.equations):
            return False
        return all(f.contains(x, t) for f in P.facets)


@dataclass(frozen=True)
class EhrhartResult:
    polynomial: Polynomial
    hstar: HStarVector
    counts_used: Tuple[Tuple[int, int], ...]
    affine_dim: int

    @property
    def normalized_volume(self) -> Fraction:
        return sum(self.hstar.entries, Fraction(0))


# -- exact linear algebra ----------------------------------------------------

def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _rref(rows: Sequence[Sequence]) -> Tuple[List[List[Fraction]], List[int]]:
    M = [[Fraction(x) for x in r] for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def _rank(rows) -> int:
    return len(_rref(rows)[1]) if rows else 0


def _primitive(vec: Sequence) -> IntVector:
    """Scale a rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in vec]
    lcm = 1
    for x in fr:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in fr]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)


def _nullspace(rows: Sequence[Sequence], ncols: int) -> List[IntVector]:
    R, pivots = _rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i][f]
        basis.append(_primitive(v))
    return basis


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


# -- facets --------------------------------------------------------------------

def _facets_by_search(points: Sequence[IntVector]) -> List[Tuple[IntVector, int]]:
    d = len(points[0])
    found = set()
    for subset in itertools.combinations(range(len(points)), d):
        base = points[subset[0]]
        normals = _nullspace([_sub(points[i], base) for i in subset[1:]], d)
        if len(normals) != 1:
            continue
        a = normals[0]
        b = _dot(a, base)
        values = [_dot(a, p) for p in points]
        if all(v <= b for v in values):
            found.add((a, b))
        elif all(v >= b for v in values):
            found.add((tuple(-x for x in a), -b))
    return sorted(found)


def _facets_by_double_description(points: Sequence[IntVector]) -> List[Tuple[IntVector, int]]:
    """Extreme rays of {(b, c) : b + c.p >= 0 for every point p}.

    Each extreme ray (b, c) is the facet inequality (-c).x <= b.  Rays are
    kept as primitive integer vectors; adjacency uses the combinatorial test.
    """
    rows = [(1,) + tuple(p) for p in points]
    m = len(rows[0])
    basis_idx: List[int] = []
    for i, r in enumerate(rows):
        if _rank([rows[j] for j in basis_idx] + [r]) > len(basis_idx):
            basis_idx.append(i)
        if len(basis_idx) == m:
            break
    if len(basis_idx) != m:
        raise FacetDerivationError("points are not full-dimensional")
    # rays of the initial simplicial cone: columns of the inverse of its rows
    inv_rows, _ = _rref([list(rows[i]) + [int(k == j) for k in range(m)]
                         for j, i in enumerate(basis_idx)])
    rays = []
    for col in range(m):
        ray = _primitive([inv_rows[r][m + col] for r in range(m)])
        zeros = frozenset(basis_idx[k] for k in range(m) if k != col)
        rays.append((ray, zeros))
    for k in range(len(rows)):
        if k in basis_idx:
            continue
        row = rows[k]
        pos, zero, neg = [], [], []
        for idx, (ray, zs) in enumerate(rays):
            s = _dot(row, ray)
            (pos if s > 0 else neg if s < 0 else zero).append((ray, zs, s, idx))
        new = []
        for rp, zp, sp, ip in pos:
            for rn, zn, sn, jn in neg:
                common = zp & zn
                if len(common) < m - 2:
                    continue
                if any(common <= zs for q, (_, zs) in enumerate(rays) if q != ip and q != jn):
                    continue
                combo = _primitive([sp * a - sn * b for a, b in zip(rn, rp)])
                new.append((combo, common | {k}))
        rays = ([(r, zs) for r, zs, _, _ in pos]
                + [(r, zs | {k}) for r, zs, _, _ in zero]
                + new)
    facets = set()
    for ray, _ in rays:
        b, c = ray[0], ray[1:]
        facets.add((tuple(-x for x in c), b))
    return sorted(facets)


def derive_facets(P: LatticePolytope, method: str = "auto",
                  max_search_dim: int = MAX_SEARCH_DIM) -> LatticePolytope:
    """Exact irredundant H-representation of ``P`` inside its affine span.

    ``method`` is ``"search"`` (try every d-subset of vertices as a facet
    hyperplane), ``"dd"`` (double description), or ``"auto"``, which
    searches unless the subset count exceeds ``SEARCH_SUBSET_LIMIT`` or
    ``d > max_search_dim``.
    """
    d, n = P.affine_dim, P.ambient_dim
    if d < 1:
        raise FacetDerivationError("facets are undefined for a single point")
    if method not in ("auto", "search", "dd"):
        raise ValueError(f"unknown facet method {method!r}")
    if method == "search" and d > max_search_dim:
        raise FacetDerivationError(
            f"exhaustive facet search is limited to dimension {max_search_dim}, got {d}")
    if method == "auto":
        small = d <= max_search_dim and math.comb(len(P.vertices), d) <= SEARCH_SUBSET_LIMIT
        method = "search" if small else "dd"
    eqs, pivots = _span_structure(P.vertices)
    projected = [tuple(v[c] for c in pivots) for v in P.vertices]
    raw = _facets_by_search(projected) if method == "search" else _facets_by_double_description(projected)
    facets = []
    for a, b in raw:
        full = [0] * n
        for c, coef in zip(pivots, a):
            full[c] = coef
        facets.append(Halfspace(tuple(full), b))
    return replace(P, facets=tuple(facets), equations=eqs)


@lru_cache(maxsize=1024)
def _span_structure(vertices: Tuple[IntVector, ...]):
    v0 = vertices[0]
    n = len(v0)
    dirs = [_sub(v, v0) for v in vertices[1:]]
    _, pivots = _rref(dirs) if dirs else ([], [])
    eqs = tuple(Hyperplane(c, _dot(c, v0)) for c in _nullspace(dirs, n)) if dirs else tuple(
        Hyperplane(tuple(int(i == j) for j in range(n)), v0[i]) for i in range(n))
    return eqs, tuple(pivots)


@lru_cache(maxsize=1024)
def _cached_h_rep(P: LatticePolytope) -> LatticePolytope:
    return derive_facets(P)


# -- counting ----------------------------------------------------------------

def _constraint_system(P: LatticePolytope):
    H = P if P.facets is not None else _cached_h_rep(P)
    A, b = [], []
    for f in H.facets:
        A.append(f.normal)
        b.append(f.offset)
    for e in H.equations:
        A.append(e.normal)
        b.append(e.offset)
        A.append(tuple(-x for x in e.normal))
        b.append(-e.offset)
    return A, b


@njit(cache=True)
def _count_kernel(A, rhs, lo, hi, rest_min, S, x, budget):
    """Depth-first count of integer x with A x <= rhs inside the box [lo, hi].

    ``S[k]`` holds A[:, :k] x[:k]; ``rest_min[k]`` the least value coordinates
    k.. can add to each row.  The admissible range of the last coordinate is
    counted, not walked.  Returns -1 once more than ``budget`` partial points
    have been visited.
    """
    m, n = A.shape
    total = 0
    visited = 0
    k = 0
    # U_stack[k] is the upper end of coordinate k's current range
    U_stack = np.zeros_like(lo)
    descending = True
    while k >= 0:
        if descending:
            lower = lo[k]
            upper = hi[k]
            for i in range(m):
                a = A[i, k]
                s = rhs[i] - S[k, i] - rest_min[k + 1, i]
                if a > 0:
                    b = s if a == 1 else s // a
                    if b < upper:
                        upper = b
                elif a < 0:
                    b = -s if a == -1 else -(s // -a)
                    if b > lower:
                        lower = b
                elif s < 0:
                    upper = lower - 1
                    break
            if upper < lower:
                k -= 1
                descending = False
                continue
            if k == n - 1:
                total += upper - lower + 1
                k -= 1
                descending = False
                continue
            x[k] = lower
            U_stack[k] = upper
            visited += 1
            if visited > budget:
                return -1
            for i in range(m):
                S[k + 1, i] = S[k, i] + lower * A[i, k]
            k += 1
        else:
            if x[k] < U_stack[k]:
                x[k] += 1
                visited += 1
                if visited > budget:
                    return -1
                for i in range(m):
                    S[k + 1, i] = S[k + 1, i] + A[i, k]
                k += 1
                descending = True
            else:
                k -= 1
    return total


def count_lattice_points(P: LatticePolytope, t: int, budget: int = DEFAULT_BUDGET) -> int:
    """Number of points of Z^n in the t-th dilate of ``P``."""
    if t < 0:
        raise ValueError("dilation factor must be non-negative")
    if t == 0 or P.affine_dim == 0:
        return 1
    n = P.ambient_dim
    lo = [t * min(v[i] for v in P.vertices) for i in range(n)]
    hi = [t * max(v[i] for v in P.vertices) for i in range(n)]
    box = math.prod(h - l + 1 for l, h in zip(lo, hi))
    A_rows, b_rows = _constraint_system(P)
    rhs = [t * b for b in b_rows]

    magnitude = max(abs(x) for x in lo + hi) + 1
    worst = max(sum(abs(a) for a in row) for row in A_rows) * magnitude + max(abs(r) for r in rhs)
    compiled = worst < _INT64_SAFE
    dtype = np.int64 if compiled else object
    A = np.array(A_rows, dtype=dtype)
    contrib = np.minimum(A * np.array(lo, dtype=dtype), A * np.array(hi, dtype=dtype))
    rest_min = np.zeros((n + 1, len(A_rows)), dtype=dtype)
    for k in range(n - 1, -1, -1):
        rest_min[k] = rest_min[k + 1] + contrib[:, k]
    kernel = _count_kernel if compiled else _count_kernel.py_func
    result = kernel(A, np.array(rhs, dtype=dtype), np.array(lo, dtype=dtype),
                    np.array(hi, dtype=dtype), rest_min,
                    np.zeros((n + 1, len(A_rows)), dtype=dtype), np.zeros(n, dtype=dtype),
                    # a box within budget bounds the walk by n * box nodes already
                    budget if box > budget else n * box)
    if result < 0:
        raise BudgetExceededError(box, budget, budget)
    return int(result)


def count_lattice_points_naive(P: LatticePolytope, t: int) -> int:
    """Test every point of the bounding box; only for small oracle checks."""
    if t == 0 or P.affine_dim == 0:
        return 1
    n = P.ambient_dim
    ranges = [range(t * min(v[i] for v in P.vertices), t * max(v[i] for v in P.vertices) + 1)
              for i in range(n)]
    Q = P.with_facets() if P.affine_dim else P
    return sum(1 for x in itertools.product(*ranges) if Q.contains(x, t))


# -- Ehrhart polynomial --------------------------------------------------------

def ehrhart_polynomial(P: LatticePolytope, budget: int = DEFAULT_BUDGET) -> EhrhartResult:
    """Interpolate counts at t = 0..d, then cross-check at t = d+1."""
    d = P.affine_dim
    Q = P.with_facets() if d else P
    counts = [(t, count_lattice_points(Q, t, budget)) for t in range(d + 1)]
    L = lagrange_interpolate(counts)
    if L.degree != d:
        raise ConsistencyError(f"interpolated degree {L.degree} differs from dimension {d}")
    hstar = to_hstar(L, d)
    if not (hstar.all_integral and hstar.all_nonnegative):
        raise ConsistencyError(f"h*-vector {hstar} is not a vector of non-negative integers")
    if hstar[0] != 1:
        raise ConsistencyError(f"h*_0 = {hstar[0]}, expected 1")
    check = count_lattice_points(Q, d + 1, budget)
    if poly_eval(L, d + 1) != check:
        raise ConsistencyError(
            f"L({d + 1}) = {poly_eval(L, d + 1)} but enumeration found {check} points")
    return EhrhartResult(L, hstar, tuple(counts) + ((d + 1, check),), d)


def ehrhart_many(polytopes: Iterable[LatticePolytope], budget: int = DEFAULT_BUDGET,
                 workers: Optional[int] = None) -> List[EhrhartResult]:
    """Ehrhart data for several polytopes; results keep the input order."""
    polytopes = list(polytopes)
    if not workers or workers <= 1:
        return [ehrhart_polynomial(P, budget) for P in polytopes]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(ehrhart_polynomial, polytopes, itertools.repeat(budget)))


# -- generators ------------------------------------------------------------------

FAMILIES = ("simplex", "cube", "cross_polytope")


def standard_family(name: str, d: int) -> LatticePolytope:
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    unit = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    if name == "simplex":
        verts = [(0,) * d] + unit
    elif name == "cube":
        verts = list(itertools.product((0, 1), repeat=d))
    elif name == "cross_polytope":
        verts = []
        for e in unit:
            verts.append(e)
            verts.append(tuple(-x for x in e))
    else:
        raise ValueError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
    return LatticePolytope(tuple(verts))


def random_lattice_simplex(d: int, coord_bound: int, seed: int,
                           max_attempts: int = 10_000) -> LatticePolytope:
    """d+1 affinely independent integer points in [-coord_bound, coord_bound]^d."""
    if d < 1 or coord_bound < 1:
        raise ValueError("d and coord_bound must be positive")
    rng = np.random.default_rng(seed)
    for _ in range(max_attempts):
        pts = rng.integers(-coord_bound, coord_bound, size=(d + 1, d), endpoint=True)
        verts = [tuple(int(x) for x in row) for row in pts]
        if _rank([_sub(v, verts[0]) for v in verts[1:]]) == d:
            return LatticePolytope(tuple(verts))
    raise RuntimeError(f"no affinely independent sample in {max_attempts} attempts")


def simplex_corpus(d: int, trials: int, coord_bound: int, seed: int) -> List[LatticePolytope]:
    """Deterministic batch of random simplices; member i depends only on (seed, d, i)."""
    children = np.random.SeedSequence([seed, d]).spawn(trials)
    return [random_lattice_simplex(d, coord_bound, int(c.generate_state(1, np.uint64)[0]))
            for c in children]


# -- text format -------------------------------------------------------------------

class PolytopeFormatError(ValueError):
    pass


def parse_polytope(text: str) -> LatticePolytope:
    """Read the ``vertices:`` / ``inequalities:`` text format.

    ``vertices:`` is followed by one integer vector per line.
    ``inequalities:`` is followed by lines ``a_1 ... a_n b`` meaning
    ``a . x <= b``; the region must be bounded with integer vertices.
    Blank lines and ``#`` comments are ignored.
    """
    mode = None
    rows: List[Tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        header = re.fullmatch(r"(vertices|inequalities)\s*:", line)
        if header:
            if mode is not None:
                raise PolytopeFormatError(f"line {lineno}: only one stanza is allowed")
            mode = header.group(1)
            continue
        if mode is None:
            raise PolytopeFormatError(f"line {lineno}: expected 'vertices:' or 'inequalities:'")
        try:
            rows.append(tuple(int(tok) for tok in line.split()))
        except ValueError:
            raise PolytopeFormatError(f"line {lineno}: expected integers, got {line!r}") from None
    if mode is None or not rows:
        raise PolytopeFormatError("no polytope data found")
    if len({len(r) for r in rows}) != 1:
        raise PolytopeFormatError("rows have differing lengths")
    if mode == "vertices":
        return LatticePolytope(tuple(rows))
    return _from_inequalities([r[:-1] for r in rows], [r[-1] for r in rows])


def _from_inequalities(A: List[IntVector], b: List[int]) -> LatticePolytope:
    n = len(A[0])
    if n == 0:
        raise PolytopeFormatError("inequalities need at least one coefficient")
    _require_bounded(A, b)
    vertices = set()
    for subset in itertools.combinations(range(len(A)), n):
        R, piv = _rref([list(A[i]) + [b[i]] for i in subset])
        if len(piv) != n or n in piv:
            continue
        x = tuple(R[i][n] for i in range(n))
        if all(_dot(A[i], x) <= b[i] for i in range(len(A))):
            if any(c.denominator != 1 for c in x):
                raise PolytopeFormatError(f"vertex {tuple(map(str, x))} is not a lattice point")
            vertices.add(tuple(int(c) for c in x))
    if not vertices:
        raise PolytopeFormatError("inequalities define an empty region")
    return LatticePolytope(tuple(sorted(vertices)))


def _require_bounded(A, b):
    from scipy.optimize import linprog

    n = len(A[0])
    for i in range(n):
        for sign in (1, -1):
            c = [0.0] * n
            c[i] = -sign
            res = linprog(c, A_ub=np.array(A, float), b_ub=np.array(b, float),
                          bounds=[(None, None)] * n, method="highs")
            if res.status == 3:
                raise PolytopeFormatError("inequalities define an unbounded region")
            if res.status == 2:
                raise PolytopeFormatError("inequalities define an empty region")


def format_polytope(P: LatticePolytope) -> str:
    lines = ["vertices:"] + [" ".join(str(c) for c in v) for v in P.vertices]
    return "\n".join(lines) + "\n"

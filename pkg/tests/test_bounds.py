import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ehrhart_roots.basis import HStarVector, basis_polynomials, from_hstar
from ehrhart_roots.bounds import (
    OriginInsideFactorDiskError,
    angular_width,
    bddps_bound,
    bound_region_scan,
    braun_disc,
    factor_points,
    generalized_halfplane_test,
    halfplane_certificate,
    verify_roots,
)
from ehrhart_roots.exactcore import Polynomial, poly_eval_complex
from ehrhart_roots.roots import find_roots


def outside_samples(d, count, seed):
    """Points with |z+1/2| uniform in (d(d-1/2)(1+1e-6), 4d^2] and uniform angle."""
    rng = np.random.default_rng([seed, d])
    r0 = d * (d - 0.5) * (1 + 1e-6)
    radii = r0 + (4 * d * d - r0) * (1 - rng.random(count))  # (r0, 4d^2]
    angles = rng.uniform(-math.pi, math.pi, count)
    return [complex(-0.5, 0) + r * cmath.exp(1j * a) for r, a in zip(radii, angles)]


def test_disc_examples():
    assert braun_disc(2).radius == 3 and braun_disc(2).center == -0.5
    assert braun_disc(3).radius == Fraction(15, 2)
    assert braun_disc(1).radius == Fraction(1, 2)
    with pytest.raises(ValueError):
        braun_disc(0)


def test_bddps_examples():
    assert [bddps_bound(d) for d in (1, 3, 4)] == [3, 25, 121]
    assert bddps_bound(30) == 1 + math.factorial(31)


@pytest.mark.parametrize("d", range(1, 40))
def test_disc_is_tighter_than_factorial_bound(d):
    assert braun_disc(d).radius + Fraction(1, 2) < bddps_bound(d)


def test_angular_width_examples():
    # independent oracle: half-angle from the right triangle with hypotenuse 5.5
    assert angular_width(5, 2) == pytest.approx(2 * math.atan(1.5 / math.sqrt(5.5**2 - 1.5**2)),
                                                rel=1e-15)
    assert angular_width(2.5, 2) == pytest.approx(math.pi / 3, rel=1e-15)
    assert angular_width(2.5, 2) < math.pi / 2
    for d in range(2, 10):
        z = -0.5 + d * (d - 0.5) * 1j
        assert angular_width(z, d) == pytest.approx(2 * math.asin(1 / d), rel=1e-14)


def test_angular_width_rejects_origin_inside():
    with pytest.raises(OriginInsideFactorDiskError):
        angular_width(0, 2)
    with pytest.raises(OriginInsideFactorDiskError):
        angular_width(1, 2)  # |z+1/2| = 3/2 = d - 1/2, on the boundary


@pytest.mark.parametrize("d", range(2, 65))
def test_proof_chain_inequality(d):
    assert 2 * math.asin(1 / d) < math.pi / d


def test_proof_chain_boundary_at_degree_one():
    assert 2 * math.asin(1.0) == math.pi


@settings(max_examples=200)
@given(st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False),
       st.integers(1, 10))
def test_factor_enclosure(z, d):
    fp = factor_points(z, d)
    assert len(fp.points) == 2 * d
    assert fp.enclosing_center == z + 0.5
    offsets = fp.half_integer_offsets
    assert max(abs(o) for o in offsets) == fp.enclosing_radius == Fraction(2 * d - 1, 2)
    # the points are z + (d - k), i.e. z + 1/2 + offset exactly
    assert all((d - k) - Fraction(1, 2) == o for k, o in enumerate(offsets))
    assert fp.points == tuple(z + (d - k) for k in range(2 * d))


def test_certificate_examples():
    c = halfplane_certificate(5, 2)
    assert c.valid and not c.zero_value
    assert c.basis_values == (21, 15, 10)
    assert c.arguments == (0.0, 0.0, 0.0)
    assert c.max_gap == 2 * math.pi
    assert c.separating_direction == 0.0
    c = halfplane_certificate(-1, 2)
    assert not c.valid and c.zero_value
    assert c.separating_direction is None
    c = halfplane_certificate(8j, 3)
    assert abs(8j + 0.5) > 7.5 and c.valid


@pytest.mark.parametrize("d", range(2, 11))
def test_certificate_completeness(d):
    for z in outside_samples(d, 1000, 1):
        c = halfplane_certificate(z, d)
        assert c.valid, z
        assert min(c.inner_products()) > 0
        assert angular_width(z, d) < math.pi / d


def test_certificate_at_degree_one():
    # the single root of h0 (t+1) + h1 t lies in [-1, 0], inside the closed disc |z+1/2| <= 1/2
    for h0, h1 in [(1, 0), (0, 1), (1, 1), (3, 7)]:
        root = -Fraction(h0, h0 + h1)
        assert abs(root + Fraction(1, 2)) <= braun_disc(1).radius
    assert halfplane_certificate(2, 1).valid
    assert halfplane_certificate(-0.5 + 2j, 1).valid
    # on the real axis left of -1 the two values (z+1, z) are both negative reals
    assert halfplane_certificate(-3, 1).valid


@settings(max_examples=200, deadline=None)
@given(st.floats(-math.pi, math.pi), st.floats(0, 50), st.integers(1, 8))
def test_valid_certificates_separate(angle, r, d):
    c = halfplane_certificate(-0.5 + r * cmath.exp(1j * angle), d)
    if c.valid:
        assert c.max_gap > math.pi
        assert all(p > 0 for p in c.inner_products())
        assert -math.pi < c.separating_direction <= math.pi
    else:
        assert c.inner_products() == []


@pytest.mark.parametrize("d", range(2, 11))
def test_non_vanishing(d):
    rng = np.random.default_rng([2, d])
    hs = [tuple(int(x) for x in rng.integers(0, 21, d + 1)) for _ in range(100)]
    pairs = [(h, from_hstar(HStarVector(h))) for h in hs if any(h)]
    basis = basis_polynomials(d)
    for z in outside_samples(d, 1000, 3)[::10]:
        values = [poly_eval_complex(b, z) for b in basis]
        for h, p in pairs:
            largest = max(hj * abs(v) for hj, v in zip(h, values))
            assert abs(poly_eval_complex(p, z)) > 1e-12 * largest


@pytest.mark.parametrize("d", range(1, 7))
def test_generalized_test_agrees_with_certificate(d):
    basis = basis_polynomials(d)
    rng = np.random.default_rng([4, d])
    zs = outside_samples(d, 500, 5) + list(rng.uniform(-3 * d, 3 * d, (500, 2)) @ [1, 1j])
    for z in zs:
        assert halfplane_certificate(z, d).valid == generalized_halfplane_test(basis, z).valid


def test_generalized_examples():
    t2 = Polynomial((0, 0, 1))
    assert not generalized_halfplane_test([t2, t2], 0).valid
    assert generalized_halfplane_test([Polynomial((1, 2, 1)), t2], 10).valid


def test_generalized_rejects_bad_bases():
    with pytest.raises(ValueError):
        generalized_halfplane_test([Polynomial((0, 1)), Polynomial((0, 0, 1))], 1)
    with pytest.raises(ValueError):
        generalized_halfplane_test([Polynomial((0, -1))], 1)
    with pytest.raises(ValueError):
        generalized_halfplane_test([Polynomial((1,))], 1)
    with pytest.raises(ValueError):
        generalized_halfplane_test([], 1)


def test_verify_roots_examples():
    rs = find_roots(Polynomial((1, 2, 2)))
    checks = verify_roots(rs, 2)
    assert all(c.in_disc for c in checks)
    assert [c.slack for c in checks] == [2.5, 2.5]  # |z+1/2| = 1/2
    for d in range(1, 9):
        simplex = from_hstar(HStarVector((1,) + (0,) * d))
        slack = min(c.slack for c in verify_roots(find_roots(simplex), d))
        assert slack == pytest.approx((d - 1) * (d - 0.5), abs=1e-9)
        cube = Polynomial.from_roots([-1] * d)
        assert all(c.slack == pytest.approx(d * (d - 0.5) - 0.5) for c in verify_roots(find_roots(cube), d))


def test_verify_roots_margin():
    from ehrhart_roots.roots import RootSet

    rs = RootSet((complex(2.5 + 1e-10),), (0.0,), 1, True)
    assert verify_roots(rs, 2)[0].in_disc
    assert not verify_roots(rs, 2, margin=0.0)[0].in_disc
    with pytest.raises(ValueError):
        verify_roots(RootSet((0j,), (1.0,), 1, False), 2)


def test_scan_b2_covers_outside_disc():
    grid = bound_region_scan(basis_polynomials(2), -8, 8, -8, 8, 0.1)
    assert grid.valid.shape == (161, 161)
    for x, y, ok in grid.rows():
        if abs(complex(x, y) + 0.5) > 3:
            assert ok, (x, y)


def test_scan_b3_real_axis():
    grid = bound_region_scan(basis_polynomials(3), 2.5, 10, 0, 0, 0.5)
    assert grid.re[0] == 2.5 and grid.im.tolist() == [0.0]
    assert grid.valid.all()


def test_scan_matches_pointwise_test():
    basis = [Polynomial((1, 3, 1)), Polynomial((0, 0, 2)), Polynomial((5, -1, 1))]
    grid = bound_region_scan(basis, -3, 3, -3, 3, 0.25)
    for x, y, ok in grid.rows():
        assert ok == generalized_halfplane_test(basis, complex(x, y)).valid


def test_scan_rejects_bad_grids():
    b = basis_polynomials(2)
    with pytest.raises(ValueError):
        bound_region_scan(b, 0, 1, 0, 1, 0)
    with pytest.raises(ValueError):
        bound_region_scan(b, 1, 0, 0, 1, 0.1)
    with pytest.raises(ValueError):
        bound_region_scan(b, 0, 1e4, 0, 1e4, 0.1)

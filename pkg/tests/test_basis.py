import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from ehrhart_roots.basis import (
    HStarVector,
    basis_element,
    basis_root_multiset,
    from_hstar,
    series_coefficients,
    to_hstar,
)
from ehrhart_roots.exactcore import Polynomial, binomial, lagrange_interpolate, poly_eval

hvectors = st.integers(1, 8).flatmap(
    lambda d: st.lists(st.integers(0, 20), min_size=d + 1, max_size=d + 1))


def sympy_series(h, count):
    """Independent oracle: power series of sum h_j x^j / (1-x)^(d+1) by sympy."""
    x = sympy.Symbol("x")
    d = len(h) - 1
    expr = sum(sympy.Integer(hj) * x**j for j, hj in enumerate(h)) / (1 - x) ** (d + 1)
    poly = sympy.series(expr, x, 0, count).removeO()
    return [Fraction(int(poly.coeff(x, t))) for t in range(count)]


def test_basis_element_examples():
    e = basis_element(2, 0)
    assert e.expansion == Polynomial((1, Fraction(3, 2), Fraction(1, 2)))
    assert e.integer_roots == (-2, -1)
    e = basis_element(2, 2)
    assert e.expansion == Polynomial((0, Fraction(-1, 2), Fraction(1, 2)))
    assert e.integer_roots == (0, 1)


@pytest.mark.parametrize("d", range(1, 9))
def test_basis_element_structure(d):
    for j in range(d + 1):
        e = basis_element(d, j)
        assert e.expansion.degree == d
        assert e.expansion.leading_coefficient == Fraction(1, math.factorial(d))
        for r in e.integer_roots:
            assert poly_eval(e.expansion, r) == 0
        assert poly_eval(e.expansion, 0) == binomial(d - j, d)
        # matches the generalized binomial at integers well outside the root range
        for t in range(-2 * d - 2, 2 * d + 3):
            assert poly_eval(e.expansion, t) == binomial(t + d - j, d)


def test_basis_element_rejects_shift():
    with pytest.raises(ValueError):
        basis_element(3, 4)
    with pytest.raises(ValueError):
        basis_element(3, -1)


def test_from_hstar_examples():
    assert from_hstar(HStarVector.of(1, 2, 1)) == Polynomial((1, 2, 2))
    assert from_hstar(HStarVector.of(1, 1, 0)) == Polynomial((1, 2, 1))
    assert from_hstar(HStarVector.of(1, 0, 0, 0)) == basis_element(3, 0).expansion


def test_to_hstar_examples():
    assert to_hstar(Polynomial((1, 2, 2)), 2).entries == (1, 2, 1)
    assert to_hstar(Polynomial((1, 3, 3, 1)), 3).entries == (1, 4, 1, 0)
    assert to_hstar(basis_element(5, 0).expansion).entries == (1, 0, 0, 0, 0, 0)


def test_to_hstar_degree_handling():
    with pytest.raises(ValueError):
        to_hstar(Polynomial((1, 2, 2)), 1)
    # raising d pads: C(t+2,2)-based identity re-expressed in degree 3
    h = to_hstar(Polynomial((1, 2, 2)), 3)
    assert from_hstar(h) == Polynomial((1, 2, 2))
    assert h.entries == (1, 1, -1, -1)


def test_series_examples():
    assert series_coefficients(HStarVector.of(1, 2, 1), 3) == [1, 5, 13]
    assert series_coefficients(HStarVector.of(1, 0), 4) == [1, 2, 3, 4]
    assert series_coefficients(HStarVector.of(1, 1, 0), 3) == [1, 4, 9]  # unit square


@pytest.mark.parametrize("h", [(1, 2, 1), (1, 4, 1, 0), (3, 0, 5, 2, 7), (1, 7, 0, 2, 9, 4)])
def test_series_matches_sympy(h):
    assert series_coefficients(HStarVector(h), 12) == sympy_series(h, 12)


@settings(max_examples=60)
@given(st.integers(1, 5).flatmap(lambda d: st.lists(st.integers(-10, 10), min_size=d + 1, max_size=d + 1)))
def test_closed_form_against_series_oracle(h):
    """to_hstar (alternating sum) versus series expansion + interpolation."""
    d = len(h) - 1
    series = sympy_series(h, d + 1)
    p = lagrange_interpolate(list(enumerate(series)))
    assert from_hstar(HStarVector(tuple(h))) == p
    assert to_hstar(p, d).entries == tuple(h)


@given(hvectors)
def test_round_trip_and_series(h):
    H = HStarVector(tuple(h))
    d = H.degree
    p = from_hstar(H)
    assert to_hstar(p, d) == H
    assert series_coefficients(H, 3 * d + 3) == [poly_eval(p, t) for t in range(3 * d + 3)]
    assert H[0] == poly_eval(p, 0)
    if sum(h):
        assert p.leading_coefficient == Fraction(sum(h), math.factorial(d))


@given(st.integers(1, 6).flatmap(
    lambda d: st.lists(st.integers(-30, 30), min_size=d + 1, max_size=d + 1)))
def test_integer_valued_gives_integer_hstar(vals):
    p = lagrange_interpolate(list(enumerate(vals)))
    assert to_hstar(p, len(vals) - 1).all_integral


def test_hstar_flags():
    assert HStarVector.of(1, 0, 2).all_nonnegative
    assert not HStarVector.of(1, Fraction(-1, 3)).all_nonnegative
    assert not HStarVector.of(1, Fraction(1, 3)).all_integral


def test_root_multiset_examples():
    assert basis_root_multiset(2) == {-2: 1, -1: 2, 0: 2, 1: 1}
    assert basis_root_multiset(1) == {-1: 1, 0: 1}


@pytest.mark.parametrize("d", range(1, 13))
def test_root_multiset_against_expansions(d):
    counts = basis_root_multiset(d)
    assert sum(counts.values()) == d * (d + 1)
    for r, c in counts.items():
        assert c == sum(poly_eval(basis_element(d, j).expansion, r) == 0 for j in range(d + 1))
    for j in range(1, d + 1):
        assert counts[-j] == counts[j - 1]

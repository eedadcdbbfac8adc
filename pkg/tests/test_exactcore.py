from fractions import Fraction
import math

import pytest
from hypothesis import given, strategies as st

from ehrhart_roots.exactcore import (
    InterpolationError,
    Polynomial,
    ZeroPolynomialError,
    binomial,
    lagrange_interpolate,
    poly_eval,
    poly_eval_complex,
)

CROSS2 = Polynomial((1, 2, 2))

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)


def test_binomial_examples():
    assert binomial(4, 2) == 6
    assert binomial(1, 2) == 0
    assert binomial(-7, 0) == 1
    assert binomial(12345, 0) == 1


def test_binomial_negative_n_product_formula():
    # (-1)(-2)(-3)/3! = -1 ; (-2)(-3)/2 = 3
    assert binomial(-1, 3) == -1
    assert binomial(-2, 2) == 3


def test_binomial_rejects_negative_k():
    with pytest.raises(ValueError):
        binomial(3, -1)


@given(st.integers(-40, 40), st.integers(1, 15))
def test_pascal_recurrence(n, k):
    assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)


@given(st.integers(0, 60), st.integers(0, 60))
def test_binomial_matches_comb(n, k):
    assert binomial(n, k) == math.comb(n, k)


def test_zero_polynomial_convention():
    z = Polynomial((0, 0, 0))
    assert z.coefficients == ()
    assert z.is_zero and z.degree == -1
    with pytest.raises(ZeroPolynomialError):
        z.leading_coefficient
    assert str(z) == "0"


def test_coefficients_are_reduced_fractions():
    p = Polynomial((Fraction(2, 4), 3))
    assert p.coefficients == (Fraction(1, 2), Fraction(3))
    assert all(c.denominator > 0 for c in p.coefficients)


def test_poly_eval_examples():
    assert poly_eval(CROSS2, 1) == 5
    assert poly_eval(CROSS2, 2) == 13
    assert poly_eval(Polynomial((7, 3, 9)), 0) == 7


def test_poly_eval_complex_examples():
    assert abs(poly_eval_complex(CROSS2, complex(-0.5, 0.5))) < 1e-12
    assert poly_eval_complex(Polynomial((1, 1)), -1) == 0
    assert poly_eval_complex(CROSS2, 0) == 1


def test_lagrange_examples():
    assert lagrange_interpolate([(0, 1), (1, 5), (2, 13)]) == CROSS2
    assert lagrange_interpolate([(0, 1), (1, 2)]) == Polynomial((1, 1))
    assert lagrange_interpolate([(0, 1), (1, 4), (2, 9)]) == Polynomial((1, 2, 1))


def test_lagrange_rejects_bad_data():
    with pytest.raises(InterpolationError):
        lagrange_interpolate([(1, 2), (1, 3)])
    with pytest.raises(InterpolationError):
        lagrange_interpolate([])


@given(st.lists(rationals, min_size=1, max_size=7), st.data())
def test_interpolation_round_trip(coeffs, data):
    p = Polynomial(tuple(coeffs))
    xs = data.draw(st.lists(rationals, min_size=len(coeffs), max_size=len(coeffs), unique=True))
    assert lagrange_interpolate([(x, poly_eval(p, x)) for x in xs]) == p


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=8),
       st.fractions(min_value=-6, max_value=6, max_denominator=8))
def test_complex_eval_agrees_with_exact(coeffs, t):
    p = Polynomial(tuple(coeffs))
    exact = poly_eval(p, t)
    if abs(exact) > 10**6:
        return
    approx = poly_eval_complex(p, complex(float(t)))
    assert abs(approx - float(exact)) <= 1e-10 * max(1.0, abs(float(exact)))


def test_str_rendering():
    assert str(CROSS2) == "2t^2+2t+1"
    assert str(Polynomial((0, Fraction(-1, 2), 1))) == "t^2-(1/2)t"

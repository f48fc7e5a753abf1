from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from quiverbs.mpoly import (
    MPoly, lagrange_interpolate, rational_roots, render_upoly, upoly_eval, upoly_from_roots, upoly_mul,
)

VARS = ("x", "y")
x, y = MPoly.variable(VARS, "x"), MPoly.variable(VARS, "y")


def test_zero_coefficients_are_not_stored():
    p = (x + y) - y
    assert p == x
    assert len(p.terms) == 1
    assert not (x - x)


def test_power_and_degree():
    p = (x + y) ** 3
    assert p.degree() == 3
    assert p.is_homogeneous()
    assert p.evaluate({"x": 1, "y": 1}) == 8
    assert not (p + 1).is_homogeneous()


def test_binomial_coefficients():
    p = (x + y) ** 4
    assert p.terms[(2, 2)] == 6


def test_interpolation_recovers_polynomial():
    poly = upoly_from_roots([-1, Fraction(-3, 2)])
    pts = [(m, upoly_eval(poly, m)) for m in range(3)]
    assert lagrange_interpolate(pts) == poly


def test_rational_roots_exact():
    poly = upoly_from_roots([-1, -1, Fraction(-5, 6), Fraction(-7, 6)])
    assert rational_roots(poly) == sorted([Fraction(-7, 6), Fraction(-1), Fraction(-1), Fraction(-5, 6)])
    assert rational_roots([Fraction(2), Fraction(0), Fraction(1)]) is None


def test_render():
    assert render_upoly(upoly_from_roots([-1, -2])) == "s^2 + 3*s + 2"
    assert render_upoly([]) == "0"


@settings(max_examples=50, deadline=None)
@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=1, max_size=5))
def test_roots_round_trip(rs):
    assert rational_roots(upoly_from_roots(rs)) == sorted(rs)


@settings(max_examples=50, deadline=None)
@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_multiplication_is_evaluation_compatible(a, b, c):
    p, q = x * a + y * b + c, x * y + 1
    pt = {"x": 2, "y": -1}
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert upoly_eval(upoly_mul([a, b], [c, 1]), 3) == (a + 3 * b) * (c + 3)

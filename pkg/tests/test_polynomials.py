from __future__ import annotations

from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from acyclica.polynomials import BivariatePoly, UnivariatePoly

x, y = sympy.symbols("x y")

shifted = st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)), st.integers(-5, 5), max_size=6)


@settings(max_examples=100, deadline=None)
@given(shifted)
def test_from_shifted_matches_sympy(data):
    P = BivariatePoly.from_shifted(data)
    expr = sympy.expand(sum(c * (x - 1) ** a * (y - 1) ** b for (a, b), c in data.items()))
    want = {k: int(v) for k, v in sympy.Poly(expr, x, y).as_dict().items() if v} if expr != 0 else {}
    assert dict(P.coeffs) == want


@settings(max_examples=50, deadline=None)
@given(shifted, st.fractions(-3, 3), st.fractions(-3, 3))
def test_derivatives_and_evaluation(data, a, b):
    P = BivariatePoly.from_shifted(data)
    expr = sympy.Integer(0) + sum(c * (x - 1) ** i * (y - 1) ** j for (i, j), c in data.items())
    assert P(a, b) == sympy.Rational(expr.subs({x: a, y: b}))
    assert P.d_dx()(a, b) == sympy.Rational(sympy.diff(expr, x).subs({x: a, y: b}))
    assert P.d_dy()(a, b) == sympy.Rational(sympy.diff(expr, y).subs({x: a, y: b}))


@settings(max_examples=50, deadline=None)
@given(shifted)
def test_json_round_trip(data):
    P = BivariatePoly.from_shifted(data)
    assert BivariatePoly.from_json(P.to_json()) == P


def test_string_orders():
    P = BivariatePoly({(3, 0): 1, (2, 0): 1, (1, 0): 1, (0, 1): 1})
    assert str(P) == "x^3 + x^2 + x + y"
    Q = BivariatePoly({(1, 0): 6, (1, 1): 20, (0, 2): 11, (0, 0): 0})
    assert Q.to_string("asc") == "6x + 20xy + 11y^2"
    assert BivariatePoly({(0, 0): -2, (2, 1): -1}).to_string() == "-2 - x^2y"
    assert str(BivariatePoly({})) == "0"


def test_univariate():
    t = UnivariatePoly((0, 1))
    p = (t * 3 + UnivariatePoly((1,))) ** 2
    assert p.coeffs == (1, 6, 9)
    assert p(Fraction(1, 3)) == 4
    assert p.integrate() == Fraction(1 + 3 + 3)
    assert UnivariatePoly.from_factors((1, -1), (0, 1)).coeffs == (0, 1, -1)
    assert p.degree == 2


def test_univariate_string():
    assert str(UnivariatePoly((3, -4, 0, 0, 1))) == "3 - 4t + t^4"
    assert str(UnivariatePoly((0, Fraction(1, 2), -1))) == "(1/2)t - t^2"
    assert str(UnivariatePoly(())) == "0"

from fractions import Fraction

import pytest

from polarvc import (
    DEGREVLEX,
    LEX,
    ParseError,
    Polynomial,
    RingMismatch,
    UnknownVariable,
    parse,
    partial_derivative,
    random_linear_form,
)

from conftest import XY, poly


def test_parse_terms():
    assert poly("y^2 - x^3").terms == {(0, 2): 1, (3, 0): -1}
    assert poly("x^2*y + 3/2").terms == {(2, 1): 1, (0, 0): Fraction(3, 2)}


def test_parse_ring_identity():
    assert poly("(x+y)*(x-y)") == poly("x^2 - y^2")


def test_parse_power_spellings():
    assert poly("x**3") == poly("x^3") == poly("x*x*x")


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as info:
        poly("x + * y")
    assert info.value.position is not None
    with pytest.raises(UnknownVariable) as info:
        poly("x + w")
    assert info.value.name == "w"
    with pytest.raises(ParseError):
        poly("(x + y")
    with pytest.raises(ParseError):
        poly("x / y")


def test_canonical_print():
    assert poly("y^2 - x^3").to_str() == "-x^3 + y^2"
    assert poly("3/2*x^2*y").to_str() == "3/2*x^2*y"
    assert str(poly("0")) == "0"


def test_derivatives():
    assert partial_derivative(poly("x^2*y"), 0) == poly("2*x*y")
    assert partial_derivative(poly("y^2 - x^3"), "y") == poly("2*y")
    assert partial_derivative(poly("7"), 0).is_zero()


def test_random_linear_form_contract():
    a = random_linear_form(1, 2)
    assert a.total_degree() == 1 and len(a.terms) == 2
    assert all(c != 0 and abs(c) <= 1000 for c in a.terms.values())
    assert random_linear_form(1, 2) == a
    vectors = {tuple(sorted(random_linear_form(s, XY).terms.items())) for s in range(1, 101)}
    assert len(vectors) == 100


def test_ring_mismatch_is_an_error():
    with pytest.raises(RingMismatch):
        poly("x") + parse("x", ("x", "z"))


def test_division_with_remainder():
    q, r = poly("x^3 + y").divmod(poly("x - y"), LEX)
    assert q * poly("x - y") + r == poly("x^3 + y")
    assert r == poly("y^3 + y")


def test_leading_terms_depend_on_order():
    p = poly("x + y^3")
    assert p.leading_monomial(LEX) == (1, 0)
    assert p.leading_monomial(DEGREVLEX) == (0, 3)


def test_substitution_and_evaluation():
    p = poly("x^2 + y")
    assert p.subs({1: poly("x")}) == poly("x^2 + x")
    assert p.evaluate((2, 3)) == 7


def test_monomial_constructor():
    assert Polynomial.monomial((1, 2), XY, 5) == poly("5*x*y^2")

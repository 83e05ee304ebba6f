from fractions import Fraction
from math import gcd, isqrt

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from fundgroup.errors import DivByZero, InvalidDiscriminant, InvalidRadicand, NotIrrational, ParseError
from fundgroup.exact import QuadExt
from fundgroup.minpoly import (
    DeclaredNonQuadratic,
    QuadraticIrrational,
    cf_expansion,
    cf_value,
    classify,
    discriminant,
    minimal_polynomial,
    parse_expr,
)


@pytest.mark.parametrize(
    "text, value",
    [
        ("(-1+sqrt(5))/2", QuadExt(Fraction(-1, 2), Fraction(1, 2), 5)),
        ("1/sqrt(5)", QuadExt(0, Fraction(1, 5), 5)),
        ("2 + sqrt(3)", QuadExt(2, 1, 3)),
        ("sqrt(12)", QuadExt(0, 2, 3)),
        ("-3*(1 - sqrt(2))", QuadExt(-3, 3, 2)),
        ("7/2", QuadExt(Fraction(7, 2))),
        ("1/(2+sqrt(3))", QuadExt(2, -1, 3)),
    ],
)
def test_parse(text, value):
    assert parse_expr(text) == value


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as e:
        parse_expr("1 + * 2")
    assert e.value.position == 4
    with pytest.raises(ParseError):
        parse_expr("sqrt(3")
    with pytest.raises(ParseError):
        parse_expr("cbrt(2)")
    with pytest.raises(InvalidRadicand):
        parse_expr("sqrt(0)")
    with pytest.raises(DivByZero):
        parse_expr("1/(sqrt(4)-2)")


@pytest.mark.parametrize(
    "text, klm, D",
    [
        ("sqrt(3)", (1, 0, -3), 12),
        ("(-1+sqrt(5))/2", (1, 1, -1), 5),
        ("sqrt(5)", (1, 0, -5), 20),
        ("1/sqrt(5)", (5, 0, -1), 20),
        ("(1+sqrt(5))/2", (1, -1, -1), 5),
    ],
)
def test_minimal_polynomial(text, klm, D):
    q = minimal_polynomial(parse_expr(text))
    assert q.coefficients == klm
    assert discriminant(q) == D
    assert q.value == parse_expr(text)


def test_minpoly_rejects_rationals():
    with pytest.raises(NotIrrational):
        minimal_polynomial(Fraction(3, 4))


def test_invalid_polynomials():
    with pytest.raises(InvalidDiscriminant):
        QuadraticIrrational(1, 0, -4)
    with pytest.raises(InvalidDiscriminant):
        QuadraticIrrational(2, 0, -4)
    with pytest.raises(InvalidDiscriminant):
        QuadraticIrrational(-1, 0, 3)


def test_scaled_integral():
    q = minimal_polynomial(parse_expr("1/sqrt(5)"))
    s = q.scaled()
    assert s.coefficients == (1, 0, -5)
    assert discriminant(s) == discriminant(q)


@pytest.mark.parametrize(
    "text, pre, per",
    [("sqrt(3)", [1], [1, 2]), ("(1+sqrt(5))/2", [], [1]), ("sqrt(2)", [1], [2]), ("sqrt(7)", [2], [1, 1, 1, 4])],
)
def test_cf_expansion(text, pre, per):
    assert cf_expansion(minimal_polynomial(parse_expr(text))) == (pre, per)


def test_classify():
    assert classify("3/4") == Fraction(3, 4)
    assert classify("nonquadratic: pi") == DeclaredNonQuadratic("pi")
    assert isinstance(classify("sqrt(2)"), QuadraticIrrational)
    with pytest.raises(ParseError):
        DeclaredNonQuadratic("a b")


triples = st.tuples(st.integers(1, 12), st.integers(-15, 15), st.integers(-15, 15))


@given(triples, st.sampled_from(["plus", "minus"]))
def test_minpoly_roundtrip(klm, sign):
    k, l, m = klm
    D = l * l - 4 * k * m
    assume(gcd(gcd(k, l), m) == 1 and D > 0 and isqrt(D) ** 2 != D)
    q = QuadraticIrrational(k, l, m, sign)
    assert q.evaluate(q.value) == 0
    assert minimal_polynomial(q.value) == q
    assert parse_expr(str(q.value)) == q.value


@given(triples)
def test_cf_converges(klm):
    k, l, m = klm
    D = l * l - 4 * k * m
    assume(gcd(gcd(k, l), m) == 1 and D > 0 and isqrt(D) ** 2 != D)
    q = QuadraticIrrational(k, l, m)
    pre, per = cf_expansion(q)
    approx = cf_value(pre, per, 30)[-1]
    assert abs(float(approx) - float(q.value)) < 1e-9

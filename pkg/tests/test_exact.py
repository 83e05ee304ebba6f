import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fundgroup.errors import DivByZero, InvalidRadicand, MixedField
from fundgroup.exact import QuadExt, compare, is_prime, prime_factors, square_decompose, valuation

RADICANDS = [2, 3, 5, 6, 7, 10, 13]

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def quads(draw, d=None):
    d = draw(st.sampled_from(RADICANDS)) if d is None else d
    return QuadExt(draw(fractions), draw(fractions), d)


@st.composite
def same_field(draw, n=2):
    d = draw(st.sampled_from(RADICANDS))
    return [draw(quads(d)) for _ in range(n)]


def mp(x: QuadExt):
    return mpmath.mpf(x.a.numerator) / x.a.denominator + mpmath.mpf(x.b.numerator) / x.b.denominator * mpmath.sqrt(x.d)


def test_canonical_radicand():
    x = QuadExt(0, 1, 12)
    assert (x.b, x.d) == (2, 3)
    assert QuadExt(3, 0, 7).d == 1
    assert QuadExt(1, 1, 4) == 3


def test_norm_identity():
    x = QuadExt(2, 1, 3)
    assert x * x.conjugate() == 1
    assert x.norm() == 1


def test_inverse_of_unit():
    assert QuadExt(2, 1, 3).inverse() == QuadExt(2, -1, 3)


def test_rationalized_reciprocal():
    x = 1 / QuadExt(0, 1, 5)
    assert (x.a, x.b, x.d) == (0, Fraction(1, 5), 5)


def test_errors():
    with pytest.raises(InvalidRadicand):
        QuadExt(0, 1, -3)
    with pytest.raises(InvalidRadicand):
        QuadExt(0, 1, 0)
    with pytest.raises(MixedField):
        QuadExt(0, 1, 2) + QuadExt(0, 1, 3)
    with pytest.raises(DivByZero):
        QuadExt(0).inverse()
    with pytest.raises(ZeroDivisionError):
        QuadExt(1, 1, 2) / 0


def test_rational_interop():
    assert QuadExt(Fraction(1, 2)) == Fraction(1, 2)
    assert hash(QuadExt(3)) == hash(3)
    assert QuadExt(0, 1, 2) + 1 == QuadExt(1, 1, 2)
    assert 2 - QuadExt(0, 1, 2) == QuadExt(2, -1, 2)


def test_str_forms():
    assert str(QuadExt(Fraction(1, 2), Fraction(1, 2), 5)) == "(1 + sqrt(5))/2"
    assert str(QuadExt(2, 1, 3)) == "2 + sqrt(3)"
    assert str(QuadExt(-2, 1, 5)) == "-2 + sqrt(5)"
    assert QuadExt(Fraction(1, 2), Fraction(1, 2), 5).pretty() == "(1+√5)/2"


def test_integrality():
    assert QuadExt(Fraction(1, 2), Fraction(1, 2), 5).is_integral()
    assert not QuadExt(Fraction(1, 2), Fraction(1, 2), 3).is_integral()
    assert QuadExt(2, 1, 3).is_integral()


def test_cross_field_compare():
    assert compare(QuadExt(0, 1, 2), QuadExt(0, 1, 3)) == -1
    assert compare(QuadExt(1, 1, 2), QuadExt(0, 1, 5)) == 1  # 2.414 > 2.236
    assert compare(QuadExt(0, 2, 2), QuadExt(0, 1, 8)) == 0


def test_factoring_helpers():
    assert square_decompose(72) == (6, 2)
    assert prime_factors(360) == (2, 3, 5)
    assert is_prime(97) and not is_prime(91)
    assert valuation(48, 2) == 4


@given(same_field(3))
def test_field_axioms(xs):
    x, y, z = xs
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == 0
    if x != 0:
        assert x * x.inverse() == 1


@given(same_field(2))
def test_norm_multiplicative(xs):
    x, y = xs
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()


@given(quads(), st.integers(-6, 6))
def test_powers(x, n):
    if x == 0 and n < 0:
        return
    assert x**n * x == x ** (n + 1)


@given(same_field(2))
def test_order_consistent_with_sign(xs):
    x, y = xs
    assert compare(x, y) == (x - y).sign()
    assert (x < y) == (compare(x, y) < 0)


def test_compare_matches_high_precision():
    rng = random.Random(20)
    mpmath.mp.dps = 60

    def rnd():
        f = lambda: Fraction(rng.randint(-50, 50), rng.randint(1, 20))
        return QuadExt(f(), f(), rng.choice(RADICANDS + [11, 15, 17]))

    for _ in range(1000):
        x, y = rnd(), rnd()
        diff = mp(x) - mp(y)
        expected = 0 if abs(diff) < mpmath.mpf(10) ** -40 else (1 if diff > 0 else -1)
        assert compare(x, y) == expected, (x, y)

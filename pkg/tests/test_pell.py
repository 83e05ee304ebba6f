from fractions import Fraction
from math import isqrt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fundgroup.errors import InvalidDiscriminant, InvariantViolation, NotADiscriminant
from fundgroup.exact import QuadExt
from fundgroup.pell import (
    PellSolution,
    brute_force_pell4,
    brute_force_units,
    fundamental_unit,
    solve_pell4,
    unit_power,
)


def valid_discriminants(limit):
    return [D for D in range(5, limit + 1) if D % 4 in (0, 1) and int(D**0.5) ** 2 != D]


@pytest.mark.parametrize(
    "D, t, u, sign",
    [(5, 1, 1, -4), (8, 2, 1, -4), (12, 4, 1, 4), (13, 3, 1, -4), (20, 4, 1, -4), (21, 5, 1, 4), (28, 16, 3, 4)],
)
def test_small_solutions(D, t, u, sign):
    assert solve_pell4(D) == PellSolution(D, t, u, sign)


def test_named_units():
    assert fundamental_unit(12) == QuadExt(2, 1, 3)
    assert fundamental_unit(5) == QuadExt(Fraction(1, 2), Fraction(1, 2), 5)
    assert fundamental_unit(20) == QuadExt(2, 1, 5)


def test_large_fundamental_solution():
    s = solve_pell4(241 * 4)
    s.check()
    assert s.t * s.t - s.D * s.u * s.u == s.sign


def test_oracle_on_large_u():
    # 241 has the largest u below 300
    assert brute_force_pell4(241) == solve_pell4(241)
    assert brute_force_pell4(241, 1000) is None


def test_discriminant_validation():
    with pytest.raises(NotADiscriminant):
        solve_pell4(7)
    with pytest.raises(InvalidDiscriminant):
        solve_pell4(16)
    with pytest.raises(InvalidDiscriminant):
        solve_pell4(-3)


def test_check_catches_bad_solutions():
    with pytest.raises(InvariantViolation):
        PellSolution(12, 4, 2, 4).check()
    with pytest.raises(InvariantViolation):
        PellSolution(5, -1, 1, -4).check()


def test_oracle_pure_python_path():
    # u_max large enough to force exact integer scanning
    assert brute_force_pell4(13, 10**10) == solve_pell4(13)


@pytest.mark.parametrize("D", valid_discriminants(120))
def test_matches_oracle(D):
    s = solve_pell4(D)
    assert brute_force_pell4(D, 10**6) == s
    # no unit > 1 below epsilon0
    for t, u, sign in brute_force_units(D, s.u):
        assert QuadExt(Fraction(t, 2), Fraction(u, 2), D) >= s.epsilon0


@settings(max_examples=60)
@given(st.sampled_from(valid_discriminants(2000)), st.integers(-5, 5))
def test_powers_are_units(D, n):
    s = solve_pell4(D)
    e = unit_power(s, n)
    assert e.norm() in (1, -1)
    assert e.is_integral()
    # e = (t + u*sqrt(D))/2 with integers t = D*u mod 2
    f = isqrt(D // e.d) if e.d > 1 else 1
    t = 2 * e.a
    u = 2 * e.b / f if e.d > 1 else Fraction(0)
    assert t.denominator == 1 and u.denominator == 1
    assert (t - D * u) % 2 == 0
    assert e.conjugate() == e.inverse() * e.norm()


@given(st.sampled_from(valid_discriminants(3000)))
def test_solution_invariants(D):
    s = solve_pell4(D)
    s.check()
    assert s.epsilon0 > 1
    assert s.epsilon0.norm() == s.sign // 4

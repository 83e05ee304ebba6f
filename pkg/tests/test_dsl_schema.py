import json
from math import inf

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fundgroup import schema
from fundgroup.algebras import UHF, IrrationalRotation, fundamental_group
from fundgroup.dsl import format_algebra, format_trace_group, parse_algebra, parse_supernatural, parse_trace_group
from fundgroup.errors import DivByZero, InvalidDescriptor, NotADiscriminant, ParseError
from fundgroup.exact import QuadExt
from fundgroup.minpoly import minimal_polynomial, parse_expr
from fundgroup.modframe import sweep
from fundgroup.pell import solve_pell4
from fundgroup.schema import ImResult, MinpolyResult, OutputRecord
from fundgroup.tracegroup import QuadraticLattice, RationalLattice, SupernaturalNumber

ALGEBRAS = [
    "rotation(sqrt(3))",
    "rotation((-1 + sqrt(5))/2)",
    "rotation(sqrt(5))",
    "rotation(sqrt(5)/5)",
    "rotation(nonquadratic:pi)",
    "uhf(2^inf)",
    "uhf(2^1*3^inf)",
    "freegroup(2)",
    "freeprod(2,3)",
    "af(zinv(6))",
    "af(quadorder(12))",
    "af(rationals)",
    "tensor_fg(uhf(2^inf),2)",
    "tensor_fg(rotation(sqrt(3)),5)",
    "tensor(uhf(2^inf),uhf(3^inf))",
    "tensor(tensor(uhf(2^inf),freegroup(3)),rotation(sqrt(2)))",
]


@pytest.mark.parametrize("text", ALGEBRAS)
def test_algebra_roundtrip(text):
    A = parse_algebra(text)
    assert format_algebra(A) == text
    assert parse_algebra(format_algebra(A)) == A


def test_whitespace_and_bare_primes():
    assert parse_algebra(" uhf( 2 ^ inf * 3 ) ") == UHF(SupernaturalNumber(((2, inf), (3, 1))))
    assert parse_algebra("rotation( 1/sqrt(5) )") == IrrationalRotation("sqrt(5)/5")


@pytest.mark.parametrize(
    "text, exc, pos",
    [
        ("rotation(sqrt(3)", ParseError, 16),
        ("rotation(1/2)", InvalidDescriptor, 9),
        ("rotation(1/0)", DivByZero, 10),
        ("rotation(sqrt(3)+*2)", ParseError, 17),
        ("uhf(4^inf)", InvalidDescriptor, 4),
        ("af(quadorder(7))", NotADiscriminant, 13),
        ("klein(2)", ParseError, 0),
        ("freegroup(2) extra", ParseError, 13),
        ("tensor(uhf(2^inf) uhf(3^inf))", ParseError, 18),
    ],
)
def test_parse_errors(text, exc, pos):
    with pytest.raises(exc) as e:
        parse_algebra(text)
    assert e.value.position == pos


@pytest.mark.parametrize("text", ["zlattice(sqrt(3))", "rlattice(6)", "snmodule(2^inf*5^2)", "ring(quadorder(5))", "ring(rationals)"])
def test_trace_group_roundtrip(text):
    E = parse_trace_group(text)
    assert format_trace_group(E) == text
    assert parse_trace_group(format_trace_group(E)) == E


def test_trace_group_from_algebra():
    assert parse_trace_group("freeprod(2,3)") == RationalLattice(6)
    assert isinstance(parse_trace_group("rotation(sqrt(2))"), QuadraticLattice)


def test_supernatural():
    assert str(parse_supernatural("3^2*2^inf")) == "2^inf*3^2"


def _roundtrip(x):
    text = json.dumps(schema.encode(x))
    return schema.loads(text)


@pytest.mark.parametrize("text", ALGEBRAS)
def test_fg_result_roundtrip(text):
    r = fundamental_group(parse_algebra(text))
    assert _roundtrip(r) == r
    rec = OutputRecord("fg", text, r, tuple(sorted(r.flags)), r.provenance, True)
    assert _roundtrip(rec) == rec


def test_other_records_roundtrip():
    q = minimal_polynomial(parse_expr("sqrt(7)"))
    for x in [
        solve_pell4(241),
        MinpolyResult(q, 28, (2,), (1, 1, 1, 4)),
        ImResult(parse_expr("2+sqrt(3)"), parse_trace_group("zlattice(sqrt(3))"), True, None, None),
        sweep(2, 2, 3, 2, seed=4),
        parse_trace_group("snmodule(2^inf*3)"),
    ]:
        assert _roundtrip(x) == x


@given(st.fractions(max_denominator=50), st.fractions(max_denominator=50), st.sampled_from([1, 2, 3, 5, 30]))
def test_quadext_roundtrip(a, b, d):
    x = QuadExt(a, b, d)
    assert _roundtrip(x) == x


def test_unknown_type():
    with pytest.raises(ValueError):
        schema.decode({"type": "Nope"})
    with pytest.raises(TypeError):
        schema.encode(object())

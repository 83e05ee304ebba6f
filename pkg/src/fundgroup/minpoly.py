"""Quadratic irrationals: parsing, minimal polynomials, continued fractions.

Expression grammar (whitespace insignificant)::

    expr  := term (("+" | "-") term)*
    term  := unary (("*" | "/") unary)*
    unary := ("+" | "-") unary | atom
    atom  := INTEGER | "sqrt" "(" INTEGER ")" | "(" expr ")"

Nested radicals are not part of the grammar, so every parsed value lies in
Q or in a single real quadratic field.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice
from math import gcd, isqrt, lcm
from typing import Iterator, Union

from .errors import DivByZero, InvalidDiscriminant, InvalidRadicand, NotIrrational, ParseError
from .exact import QuadExt, as_quad, is_square

__all__ = [
    "QuadraticIrrational",
    "DeclaredNonQuadratic",
    "ThetaClass",
    "parse_expr",
    "minimal_polynomial",
    "discriminant",
    "cf_expansion",
    "surd_quotients",
    "convergents",
    "cf_value",
    "classify",
    "NONQUADRATIC_TAG",
]

NONQUADRATIC_TAG = "nonquadratic:"
_LABEL = re.compile(r"[A-Za-z0-9_.]+\Z")
_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_]+)|(?P<op>[-+*/()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad, text)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.take()
        if val != value:
            found = "end of input" if kind == "end" else repr(val)
            raise ParseError(f"expected {value!r}, found {found}", pos, self.text)

    def fail(self, what: str):
        kind, val, pos = self.peek()
        found = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"expected {what}, found {found}", pos, self.text)

    def parse(self) -> QuadExt:
        value = self.expr()
        if self.peek()[0] != "end":
            self.fail("operator or end of input")
        return value

    def expr(self) -> QuadExt:
        value = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> QuadExt:
        value = self.unary()
        while self.peek()[1] in ("*", "/"):
            _, op, pos = self.take()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if not rhs:
                    raise DivByZero("division by zero", pos)
                value = value / rhs
        return value

    def unary(self) -> QuadExt:
        if self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            value = self.unary()
            return -value if op == "-" else value
        return self.atom()

    def atom(self) -> QuadExt:
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            return as_quad(int(val))
        if kind == "name":
            if val != "sqrt":
                raise ParseError(f"unknown name {val!r}", pos, self.text)
            self.take()
            self.expect("(")
            negative = False
            if self.peek()[1] == "-":
                self.take()
                negative = True
            kind, num, npos = self.peek()
            if kind != "int":
                self.fail("integer radicand")
            self.take()
            self.expect(")")
            n = -int(num) if negative else int(num)
            if n <= 0:
                raise InvalidRadicand(f"sqrt needs a positive integer, got {n}", npos)
            return QuadExt(0, 1, n)
        if val == "(":
            self.take()
            value = self.expr()
            self.expect(")")
            return value
        self.fail("number, sqrt(...) or '('")


def parse_expr(text: str) -> QuadExt:
    """Parse an expression into its exact value.

    >>> parse_expr("(-1+sqrt(5))/2")
    QuadExt('-1/2', '1/2', 5)
    """
    return _Parser(text).parse()


@dataclass(frozen=True)
class QuadraticIrrational:
    """A root of the primitive polynomial ``k*x^2 + l*x + m``.

    ``root_sign == "plus"`` selects ``(-l + sqrt(D)) / (2k)``.
    """

    k: int
    l: int
    m: int
    root_sign: str = "plus"
    value: QuadExt = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        k, l, m = self.k, self.l, self.m
        if k <= 0:
            raise InvalidDiscriminant(f"leading coefficient must be positive, got {k}")
        if gcd(gcd(k, l), m) != 1:
            raise InvalidDiscriminant(f"({k}, {l}, {m}) is not primitive")
        if self.root_sign not in ("plus", "minus"):
            raise ValueError(f"root_sign must be 'plus' or 'minus', got {self.root_sign!r}")
        D = l * l - 4 * k * m
        if D <= 0 or is_square(D):
            raise InvalidDiscriminant(f"discriminant {D} must be positive and not a square")
        s = 1 if self.root_sign == "plus" else -1
        value = QuadExt(Fraction(-l, 2 * k), Fraction(s, 2 * k), D)
        object.__setattr__(self, "value", value)

    @property
    def discriminant(self) -> int:
        return self.l * self.l - 4 * self.k * self.m

    @property
    def coefficients(self) -> tuple[int, int, int]:
        return self.k, self.l, self.m

    def evaluate(self, x) -> QuadExt:
        x = as_quad(x)
        return self.k * x * x + self.l * x + self.m

    def scaled(self) -> "QuadraticIrrational":
        """Minimal polynomial of ``k*theta``, a quadratic integer."""
        return minimal_polynomial(self.k * self.value)

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class DeclaredNonQuadratic:
    """A user assertion that theta is irrational and not quadratic.

    Nothing about it can be checked; results built on it carry a flag.
    """

    label: str

    def __post_init__(self):
        if not _LABEL.match(self.label):
            raise ParseError(f"invalid label {self.label!r}", None, self.label)

    def __str__(self):
        return f"{NONQUADRATIC_TAG}{self.label}"


ThetaClass = Union[Fraction, QuadraticIrrational, DeclaredNonQuadratic]


def minimal_polynomial(x) -> QuadraticIrrational:
    x = as_quad(x)
    if x.is_rational:
        raise NotIrrational(f"{x} is rational")
    # x^2 - 2a x + (a^2 - b^2 d), cleared of denominators
    c1 = -2 * x.a
    c0 = x.norm()
    L = lcm(c1.denominator, c0.denominator)
    k, l, m = L, int(c1 * L), int(c0 * L)
    g = gcd(gcd(k, l), m)
    return QuadraticIrrational(k // g, l // g, m // g, "plus" if x.b > 0 else "minus")


def discriminant(q: QuadraticIrrational) -> int:
    return q.discriminant


def surd_quotients(P: int, Q: int, N: int) -> Iterator[tuple[int, tuple[int, int]]]:
    """Partial quotients of ``(P + sqrt(N)) / Q``, with the state before each.

    `N` must be a positive non-square. If ``Q`` does not divide ``N - P^2``
    the triple is rescaled first so the recurrence stays integral.
    """
    if Q == 0:
        raise DivByZero("zero denominator")
    if N <= 0 or is_square(N):
        raise InvalidRadicand(f"{N} must be a positive non-square")
    if (N - P * P) % Q:
        P, N, Q = P * abs(Q), N * Q * Q, Q * abs(Q)
    s = isqrt(N)
    while True:
        a = (P + s) // Q if Q > 0 else (P + s + 1) // Q
        yield a, (P, Q)
        P = a * Q - P
        Q = (N - P * P) // Q


def cf_expansion(q: QuadraticIrrational) -> tuple[list[int], list[int]]:
    """Eventually periodic continued fraction of `q`, period minimal."""
    D = q.discriminant
    if q.root_sign == "plus":
        P, Q = -q.l, 2 * q.k
    else:
        P, Q = q.l, -2 * q.k
    seen: dict[tuple[int, int], int] = {}
    terms: list[int] = []
    for a, state in surd_quotients(P, Q, D):
        if state in seen:
            start = seen[state]
            return terms[:start], terms[start:]
        seen[state] = len(terms)
        terms.append(a)
    raise AssertionError("unreachable")


def convergents(quotients) -> Iterator[tuple[int, int]]:
    """Successive convergents ``(p, q)`` of a continued fraction."""
    p0, q0, p1, q1 = 1, 0, 0, 1
    for a in quotients:
        p0, p1 = a * p0 + p1, p0
        q0, q1 = a * q0 + q1, q0
        yield p0, q0


def cf_value(preperiod: list[int], period: list[int], n_terms: int) -> list[Fraction]:
    """The first `n_terms` convergents of an expansion, as fractions."""

    def terms():
        yield from preperiod
        while True:
            yield from period

    return [Fraction(p, q) for p, q in islice(convergents(terms()), n_terms)]


def classify(value) -> ThetaClass:
    """Sort an input into rational, quadratic, or declared non-quadratic."""
    if isinstance(value, (QuadraticIrrational, DeclaredNonQuadratic, Fraction)):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if text.startswith(NONQUADRATIC_TAG):
            return DeclaredNonQuadratic(text[len(NONQUADRATIC_TAG):].strip())
        value = parse_expr(text)
    x = as_quad(value)
    if x.is_rational:
        return x.a
    return minimal_polynomial(x)

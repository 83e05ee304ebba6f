"""Text syntax for algebras and trace groups.

Algebras::

    rotation(<expr> | nonquadratic:<label>)
    uhf(<p>^<e|inf> * ...)            # a bare prime means exponent 1
    freegroup(<n>)
    freeprod(<n>, <m>)
    af(zinv(<n>) | quadorder(<D>) | rationals)
    tensor_fg(<algebra>, <n>)
    tensor(<algebra>, <algebra>)

Trace groups (for ``im --group``)::

    zlattice(<expr>)     Z + Z*theta
    rlattice(<q>)        (1/q) Z
    snmodule(<supernatural>)
    ring(<ring>)

Any algebra is also accepted as a trace group and stands for its trace image.
``<expr>`` is the expression grammar of :mod:`fundgroup.minpoly`.
"""

from __future__ import annotations

import re
from math import inf

from .algebras import (
    AF,
    UHF,
    AlgebraDescriptor,
    FreeProduct,
    IrrationalRotation,
    ReducedFreeGroup,
    TensorMin,
    TensorWithFreeGroup,
    trace_k0,
)
from .errors import InputError, ParseError
from .minpoly import NONQUADRATIC_TAG, DeclaredNonQuadratic, classify, minimal_polynomial, parse_expr
from .tracegroup import (
    FullRationals,
    LocalizationOfZ,
    QuadraticLattice,
    QuadraticOrder,
    RationalLattice,
    RingByDescriptor,
    RingDescriptor,
    SupernaturalModule,
    SupernaturalNumber,
    TraceGroup,
)

__all__ = [
    "parse_algebra",
    "parse_trace_group",
    "parse_supernatural",
    "format_algebra",
    "format_trace_group",
    "format_ring",
    "format_supernatural",
]

_NAME = re.compile(r"[A-Za-z_]+")
_INT = re.compile(r"-?\d+")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, pos: int | None = None) -> ParseError:
        return ParseError(message, self.pos if pos is None else pos, self.text)

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, literal: str) -> bool:
        self.ws()
        return self.text.startswith(literal, self.pos)

    def expect(self, literal: str):
        if not self.peek(literal):
            found = self.text[self.pos:self.pos + 1] or "end of input"
            raise self.error(f"expected {literal!r}, found {found!r}")
        self.pos += len(literal)

    def name(self) -> tuple[str, int]:
        self.ws()
        m = _NAME.match(self.text, self.pos)
        if not m:
            raise self.error("expected a name")
        self.pos = m.end()
        return m.group(), m.start()

    def integer(self) -> int:
        self.ws()
        m = _INT.match(self.text, self.pos)
        if not m:
            raise self.error("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def raw_argument(self) -> tuple[str, int]:
        """Text up to the next top-level ',' or ')'."""
        self.ws()
        start, depth = self.pos, 0
        while self.pos < len(self.text):
            c = self.text[self.pos]
            if c == "(":
                depth += 1
            elif c == ")":
                if depth == 0:
                    break
                depth -= 1
            elif c == "," and depth == 0:
                break
            self.pos += 1
        else:
            raise self.error("unbalanced parentheses")
        return self.text[start:self.pos].rstrip(), start

    def end(self):
        self.ws()
        if self.pos != len(self.text):
            raise self.error(f"unexpected trailing input {self.text[self.pos:]!r}")


def _wrap(sc: _Scanner, pos: int, fn, *args):
    """Run a constructor, locating any input error it raises at `pos`."""
    try:
        return fn(*args)
    except InputError as exc:
        if exc.position is not None:
            raise
        raise type(exc)(exc.message, pos, sc.text) from exc


def _expr(sc: _Scanner):
    text, start = sc.raw_argument()
    if not text:
        raise sc.error("expected an expression", start)
    try:
        return parse_expr(text)
    except InputError as exc:
        if exc.position is None:
            raise type(exc)(exc.message, start, sc.text) from exc
        raise exc.shifted(start, sc.text) from None


def _theta(sc: _Scanner):
    text, start = sc.raw_argument()
    if text.startswith(NONQUADRATIC_TAG):
        return _wrap(sc, start, DeclaredNonQuadratic, text[len(NONQUADRATIC_TAG):])
    sc.pos = start
    x = _expr(sc)
    return _wrap(sc, start, classify, x)


def _supernatural(sc: _Scanner) -> SupernaturalNumber:
    start = sc.pos
    factors = []
    while True:
        p = sc.integer()
        e = 1
        if sc.peek("^"):
            sc.expect("^")
            if sc.peek("inf"):
                sc.expect("inf")
                e = inf
            else:
                e = sc.integer()
        factors.append((p, e))
        if not sc.peek("*"):
            break
        sc.expect("*")
    return _wrap(sc, start, SupernaturalNumber, tuple(factors))


def _ring(sc: _Scanner) -> RingDescriptor:
    name, pos = sc.name()
    if name == "rationals":
        return FullRationals()
    if name not in ("zinv", "quadorder"):
        raise sc.error(f"unknown ring {name!r}", pos)
    sc.expect("(")
    argpos = sc.pos
    n = sc.integer()
    sc.expect(")")
    return _wrap(sc, argpos, LocalizationOfZ if name == "zinv" else QuadraticOrder, n)


def _algebra(sc: _Scanner) -> AlgebraDescriptor:
    name, pos = sc.name()
    sc.expect("(")
    argpos = sc.pos
    if name == "rotation":
        theta = _theta(sc)
        result = _wrap(sc, argpos, IrrationalRotation, theta)
    elif name == "uhf":
        result = UHF(_supernatural(sc))
    elif name == "freegroup":
        result = _wrap(sc, argpos, ReducedFreeGroup, sc.integer())
    elif name == "freeprod":
        n = sc.integer()
        sc.expect(",")
        result = _wrap(sc, argpos, FreeProduct, n, sc.integer())
    elif name == "af":
        result = AF(_ring(sc))
    elif name == "tensor_fg":
        inner = _algebra(sc)
        sc.expect(",")
        npos = sc.pos
        result = _wrap(sc, npos, TensorWithFreeGroup, inner, sc.integer())
    elif name == "tensor":
        left = _algebra(sc)
        sc.expect(",")
        result = TensorMin(left, _algebra(sc))
    else:
        raise sc.error(f"unknown algebra {name!r}", pos)
    sc.expect(")")
    return result


def parse_algebra(text: str) -> AlgebraDescriptor:
    sc = _Scanner(text)
    A = _algebra(sc)
    sc.end()
    return A


def parse_supernatural(text: str) -> SupernaturalNumber:
    sc = _Scanner(text)
    m = _supernatural(sc)
    sc.end()
    return m


def parse_trace_group(text: str) -> TraceGroup:
    sc = _Scanner(text)
    start = sc.pos
    name, pos = sc.name()
    if name == "zlattice":
        sc.expect("(")
        argpos = sc.pos
        x = _expr(sc)
        E = QuadraticLattice(_wrap(sc, argpos, minimal_polynomial, x))
    elif name == "rlattice":
        sc.expect("(")
        argpos = sc.pos
        E = _wrap(sc, argpos, RationalLattice, sc.integer())
    elif name == "snmodule":
        sc.expect("(")
        E = SupernaturalModule(_supernatural(sc))
    elif name == "ring":
        sc.expect("(")
        E = RingByDescriptor(_ring(sc))
    else:
        sc.pos = start
        A = _algebra(sc)
        sc.end()
        return _wrap(sc, start, trace_k0, A)
    sc.expect(")")
    sc.end()
    return E


def format_supernatural(m: SupernaturalNumber) -> str:
    return str(m)


def format_ring(r: RingDescriptor) -> str:
    if isinstance(r, LocalizationOfZ):
        return f"zinv({r.n})"
    if isinstance(r, QuadraticOrder):
        return f"quadorder({r.D})"
    if isinstance(r, FullRationals):
        return "rationals"
    raise TypeError(f"not a ring descriptor: {r!r}")


def format_algebra(A: AlgebraDescriptor) -> str:
    """Inverse of :func:`parse_algebra`."""
    if isinstance(A, IrrationalRotation):
        return f"rotation({A.theta})"
    if isinstance(A, UHF):
        return f"uhf({A.m})"
    if isinstance(A, ReducedFreeGroup):
        return f"freegroup({A.n})"
    if isinstance(A, FreeProduct):
        return f"freeprod({A.n},{A.m})"
    if isinstance(A, AF):
        return f"af({format_ring(A.ring)})"
    if isinstance(A, TensorWithFreeGroup):
        return f"tensor_fg({format_algebra(A.inner)},{A.n})"
    if isinstance(A, TensorMin):
        return f"tensor({format_algebra(A.left)},{format_algebra(A.right)})"
    raise TypeError(f"not an algebra descriptor: {A!r}")


def format_trace_group(E: TraceGroup) -> str:
    """Inverse of :func:`parse_trace_group`."""
    if isinstance(E, QuadraticLattice):
        return f"zlattice({E.theta})"
    if isinstance(E, RationalLattice):
        return f"rlattice({E.q})"
    if isinstance(E, SupernaturalModule):
        return f"snmodule({E.m})"
    if isinstance(E, RingByDescriptor):
        return f"ring({format_ring(E.ring)})"
    raise TypeError(f"not a trace group: {E!r}")

"""Exact arithmetic in Q and in real quadratic fields Q(sqrt(d)).

Rationals are :class:`fractions.Fraction`. Elements ``a + b*sqrt(d)`` are
:class:`QuadExt`, always stored in canonical form: ``d`` squarefree and
``d == 1`` exactly when ``b == 0``. Equality of canonical forms is equality
of real numbers.

All comparisons are decided with integer arithmetic only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt, lcm
from numbers import Rational as _RationalABC
from typing import Union

from .errors import DivByZero, InvalidRadicand, MixedField

__all__ = [
    "QuadExt",
    "Number",
    "SQUAREFREE_BOUND",
    "normalize",
    "arith",
    "compare",
    "field_norm",
    "field_conj",
    "as_quad",
    "square_decompose",
    "is_square",
    "prime_factors",
    "is_prime",
    "valuation",
]

#: Trial-division limit used when extracting square factors from a radicand.
SQUAREFREE_BOUND = 10**6

Number = Union[int, Fraction, "QuadExt"]


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


@lru_cache(maxsize=4096)
def square_decompose(n: int, bound: int = SQUAREFREE_BOUND) -> tuple[int, int]:
    """Split ``n > 0`` as ``f*f*core`` with ``core`` squarefree.

    Trial division runs over candidates up to `bound`; whatever cofactor
    remains must be a perfect square, or else small enough (below
    ``bound**3``) that it is certainly a product of at most two distinct
    large primes. Anything else is rejected.
    """
    if n <= 0:
        raise InvalidRadicand(f"radicand must be positive, got {n}")
    f, core, rest = 1, 1, n
    p = 2
    while p <= bound and p * p <= rest:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            f *= p ** (e // 2)
            if e % 2:
                core *= p
        p += 1 if p == 2 else 2
    if rest > 1:
        r = isqrt(rest)
        if r * r == rest:
            f *= r
        elif p * p > rest or rest < bound**3:
            core *= rest
        else:
            raise InvalidRadicand(
                f"cannot certify the squarefree part of {n} within trial bound {bound}"
            )
    return f, core


def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct prime divisors of ``|n|`` in increasing order (trial division)."""
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == (n,)


def valuation(n: int, p: int) -> int:
    """Exponent of the prime `p` in the nonzero integer `n`."""
    if n == 0:
        raise ValueError("valuation of zero")
    n, v = abs(n), 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _sign_a_plus_b_sqrt(a: Fraction, b: Fraction, d: int) -> int:
    """Sign of ``a + b*sqrt(d)`` for ``d > 0`` not a perfect square (or b == 0)."""
    sa, sb = _sign(a), _sign(b)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: the larger magnitude wins
    return sa * _sign(a * a - b * b * d)


def _sign_two_surds(b1: Fraction, d1: int, b2: Fraction, d2: int) -> int:
    """Sign of ``b1*sqrt(d1) + b2*sqrt(d2)``."""
    s1, s2 = _sign(b1), _sign(b2)
    if s2 == 0:
        return s1
    if s1 == 0 or s1 == s2:
        return s2
    return s1 * _sign(b1 * b1 * d1 - b2 * b2 * d2)


@dataclass(frozen=True, eq=False)
class QuadExt:
    """The real number ``a + b*sqrt(d)``, canonicalized on construction."""

    a: Fraction
    b: Fraction = Fraction(0)
    d: int = 1

    def __post_init__(self):
        a, b, d = Fraction(self.a), Fraction(self.b), int(self.d)
        if d <= 0:
            raise InvalidRadicand(f"radicand must be >= 1, got {d}")
        f, core = square_decompose(d)
        b *= f
        if core == 1:
            a, b = a + b, Fraction(0)
        if b == 0:
            core = 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", core)

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, d: int) -> "QuadExt":
        # d is already squarefree (or 1); skip factoring
        obj = object.__new__(cls)
        if b == 0:
            d = 1
        object.__setattr__(obj, "a", a)
        object.__setattr__(obj, "b", b)
        object.__setattr__(obj, "d", d)
        return obj

    # -- structure -------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def rational(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is irrational")
        return self.a

    def conjugate(self) -> "QuadExt":
        return QuadExt._raw(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def trace(self) -> Fraction:
        return 2 * self.a

    def is_integral(self) -> bool:
        """True when the number is an algebraic integer."""
        if self.b == 0:
            return self.a.denominator == 1
        return self.trace().denominator == 1 and self.norm().denominator == 1

    def sign(self) -> int:
        return _sign_a_plus_b_sqrt(self.a, self.b, self.d)

    # -- arithmetic ------------------------------------------------------
    def _field_with(self, other: "QuadExt") -> int:
        if self.b == 0:
            return other.d
        if other.b == 0 or other.d == self.d:
            return self.d
        raise MixedField(f"cannot combine elements of Q(sqrt({self.d})) and Q(sqrt({other.d}))")

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        d = self._field_with(other)
        return QuadExt._raw(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt._raw(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        d = self._field_with(other)
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        return QuadExt._raw(a1 * a2 + b1 * b2 * d, a1 * b2 + a2 * b1, d)

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            raise DivByZero("division by zero")
        return QuadExt._raw(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        self._field_with(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = QuadExt._raw(Fraction(1), Fraction(0), 1)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self.a == other.a and self.b == other.b and self.d == other.d

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return compare(self, other) < 0

    def __le__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return compare(self, other) <= 0

    def __gt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return compare(self, other) > 0

    def __ge__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return compare(self, other) >= 0

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __float__(self):
        # display / sanity only; never used for decisions
        return float(self.a) + float(self.b) * self.d**0.5

    # -- formatting ------------------------------------------------------
    def _parts(self) -> tuple[int, int, int]:
        den = lcm(self.a.denominator, self.b.denominator)
        return int(self.a * den), int(self.b * den), den

    def _format(self, surd: str) -> str:
        A, B, den = self._parts()
        if B == 0:
            return str(A) if den == 1 else f"{A}/{den}"
        s = surd.format(self.d)
        if abs(B) == 1:
            rad = s if B > 0 else f"-{s}"
        else:
            rad = f"{B}*{s}"
        if A == 0:
            core, single = rad, True
        else:
            core = f"{A} + {rad}" if B > 0 else f"{A} - {rad[1:]}"
            single = False
        if den == 1:
            return core
        return f"{core}/{den}" if single else f"({core})/{den}"

    def __str__(self):
        """Render in the expression grammar, so ``parse_expr(str(x)) == x``."""
        return self._format("sqrt({})")

    def pretty(self) -> str:
        return self._format("√{}").replace("*√", "√").replace(" ", "")

    def __repr__(self):
        return f"QuadExt({str(self.a)!r}, {str(self.b)!r}, {self.d})"


def _coerce(x) -> QuadExt:
    if isinstance(x, QuadExt):
        return x
    if isinstance(x, (int, Fraction)) or isinstance(x, _RationalABC):
        return QuadExt._raw(Fraction(x), Fraction(0), 1)
    return NotImplemented


def as_quad(x: Number) -> QuadExt:
    q = _coerce(x)
    if q is NotImplemented:
        raise TypeError(f"not an exact number: {x!r}")
    return q


def normalize(a, b, d: int) -> QuadExt:
    """Canonical form of ``a + b*sqrt(d)``."""
    return QuadExt(Fraction(a), Fraction(b), d)


def arith(x: Number, y: Number, op: str) -> QuadExt:
    x, y = as_quad(x), as_quad(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def compare(x: Number, y: Number) -> int:
    """Return -1, 0 or 1 as ``x`` is less than, equal to or greater than ``y``.

    Works across fields: ``sqrt(2)`` and ``sqrt(3)`` compare without any
    common embedding.
    """
    x, y = as_quad(x), as_quad(y)
    if x.b == 0 or y.b == 0 or x.d == y.d:
        return (x - y).sign()
    r = x.a - y.a
    s = _sign_two_surds(x.b, x.d, -y.b, y.d)
    sr = _sign(r)
    if sr == 0:
        return s
    if s == 0 or s == sr:
        return sr
    # |r| against |b1*sqrt(d1) - b2*sqrt(d2)|, both squared:
    # r^2 - b1^2 d1 - b2^2 d2 + 2 b1 b2 sqrt(d1 d2)
    A = r * r - x.b * x.b * x.d - y.b * y.b * y.d
    B = 2 * x.b * y.b
    m = _sign_a_plus_b_sqrt(A, B, x.d * y.d)
    if m > 0:
        return sr
    if m < 0:
        return s
    return 0


def field_norm(x: Number) -> Fraction:
    return as_quad(x).norm()


def field_conj(x: Number) -> QuadExt:
    return as_quad(x).conjugate()


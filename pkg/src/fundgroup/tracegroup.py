"""Trace groups E = tau_*(K_0(A)) inside R, and their inner multipliers.

A trace group is one of

* ``RationalLattice(q)``        the cyclic group (1/q)Z
* ``QuadraticLattice(theta)``   Z + Z*theta for a quadratic irrational theta
* ``SupernaturalModule(m)``     rationals whose denominators divide m
* ``RingByDescriptor(r)``       a supported unital subring of R

``IM_+(E)`` is the group of ``t > 0`` with ``tE = E``; it is returned as a
:data:`GroupValue` presentation that supports exact membership tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, inf, prod
from typing import Union

from .errors import InvalidDescriptor, InvariantViolation, MixedField, NotPositive, UnsupportedComposition
from .exact import QuadExt, as_quad, compare, is_prime, prime_factors, valuation
from .minpoly import QuadraticIrrational, minimal_polynomial
from .pell import check_discriminant, fundamental_unit

__all__ = [
    "SupernaturalNumber",
    "LocalizationOfZ",
    "QuadraticOrder",
    "FullRationals",
    "RingDescriptor",
    "RationalLattice",
    "QuadraticLattice",
    "SupernaturalModule",
    "RingByDescriptor",
    "TraceGroup",
    "GroupValue",
    "Trivial",
    "InfiniteCyclic",
    "FreeAbelianOnPrimes",
    "PositiveRationals",
    "LowerBoundOnly",
    "GeneratedRing",
    "Unrepresentable",
    "contains",
    "scales",
    "scaling_matrix",
    "scales_by_inclusion",
    "inner_multiplier_group",
    "verify_quadratic_generator",
    "ring_generated_by_group",
    "units_positive",
    "fg_contains",
    "sample_member",
    "power_exponent",
    "field_discriminant",
]


# ---------------------------------------------------------------------------
# supernatural numbers and ring descriptors


@dataclass(frozen=True)
class SupernaturalNumber:
    """Formal product of prime powers; exponents are ints >= 1 or ``math.inf``."""

    factors: tuple[tuple[int, Union[int, float]], ...] = ()

    def __post_init__(self):
        merged: dict[int, Union[int, float]] = {}
        for p, e in self.factors:
            if not is_prime(p):
                raise InvalidDescriptor(f"{p} is not prime")
            if e != inf and (not isinstance(e, int) or e < 1):
                raise InvalidDescriptor(f"exponent of {p} must be a positive integer or inf, got {e!r}")
            merged[p] = merged.get(p, 0) + e
        object.__setattr__(self, "factors", tuple(sorted(merged.items())))

    def exponent(self, p: int) -> Union[int, float]:
        return dict(self.factors).get(p, 0)

    @property
    def infinite_primes(self) -> tuple[int, ...]:
        return tuple(p for p, e in self.factors if e == inf)

    def __str__(self):
        if not self.factors:
            return "1"
        return "*".join(f"{p}^{'inf' if e == inf else e}" for p, e in self.factors)


@dataclass(frozen=True)
class LocalizationOfZ:
    """Z[1/n]; `n` is stored as its radical."""

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise InvalidDescriptor(f"Z[1/n] needs n >= 2, got {self.n}")
        object.__setattr__(self, "n", prod(prime_factors(self.n)))

    @property
    def primes(self) -> tuple[int, ...]:
        return prime_factors(self.n)


@dataclass(frozen=True)
class QuadraticOrder:
    """The order Z[(s + sqrt(D))/2], s = D mod 2, of discriminant D."""

    D: int

    def __post_init__(self):
        check_discriminant(self.D)

    @property
    def omega(self) -> QuadraticIrrational:
        s = self.D % 2
        return minimal_polynomial(QuadExt(Fraction(s, 2), Fraction(1, 2), self.D))


@dataclass(frozen=True)
class FullRationals:
    pass


RingDescriptor = Union[LocalizationOfZ, QuadraticOrder, FullRationals]


# ---------------------------------------------------------------------------
# trace groups


@dataclass(frozen=True)
class RationalLattice:
    """(1/q) Z."""

    q: int = 1

    def __post_init__(self):
        if self.q < 1:
            raise InvalidDescriptor(f"lattice step must be 1/q with q >= 1, got q={self.q}")

    @property
    def step(self) -> Fraction:
        return Fraction(1, self.q)


@dataclass(frozen=True)
class QuadraticLattice:
    """Z + Z*theta."""

    theta: QuadraticIrrational


@dataclass(frozen=True)
class SupernaturalModule:
    m: SupernaturalNumber


@dataclass(frozen=True)
class RingByDescriptor:
    ring: RingDescriptor


TraceGroup = Union[RationalLattice, QuadraticLattice, SupernaturalModule, RingByDescriptor]


@dataclass(frozen=True)
class _PadicBounds:
    # x in E  iff  v_p(x) >= -bound(p) for every prime p
    bounds: dict
    default: Union[int, float] = 0

    def contains(self, x: Fraction) -> bool:
        if self.default == inf:
            return True
        den = x.denominator
        for p, e in self.bounds.items():
            v = 0
            while den % p == 0:
                den //= p
                v += 1
            if v > e:
                return False
        return den == 1

    def scales(self, lam: Fraction) -> bool:
        if self.default == inf:
            return True
        num, den = lam.numerator, lam.denominator
        for p, e in self.bounds.items():
            if e == inf:
                while num % p == 0:
                    num //= p
                while den % p == 0:
                    den //= p
        return num == 1 and den == 1

    @property
    def infinite_primes(self) -> tuple[int, ...]:
        return tuple(sorted(p for p, e in self.bounds.items() if e == inf))


def _as_lattice(E: TraceGroup):
    """Either a QuadraticLattice or a _PadicBounds describing the same group."""
    if isinstance(E, QuadraticLattice):
        return E
    if isinstance(E, RationalLattice):
        return _PadicBounds({p: valuation(E.q, p) for p in prime_factors(E.q)})
    if isinstance(E, SupernaturalModule):
        return _PadicBounds(dict(E.m.factors))
    if isinstance(E, RingByDescriptor):
        r = E.ring
        if isinstance(r, LocalizationOfZ):
            return _PadicBounds({p: inf for p in r.primes})
        if isinstance(r, QuadraticOrder):
            return QuadraticLattice(r.omega)
        if isinstance(r, FullRationals):
            return _PadicBounds({}, inf)
    raise TypeError(f"not a trace group: {E!r}")


def _coords(theta: QuadraticIrrational, x: QuadExt) -> tuple[Fraction, Fraction]:
    """Rational (a, b) with x = a + b*theta; MixedField if x lies elsewhere."""
    t = theta.value
    if x.is_rational:
        return x.a, Fraction(0)
    if x.d != t.d:
        raise MixedField(f"{x} is not in Q(sqrt({t.d}))")
    b = x.b / t.b
    return x.a - b * t.a, b


def contains(E: TraceGroup, x) -> bool:
    """Exact membership ``x in E``."""
    x = as_quad(x)
    L = _as_lattice(E)
    if isinstance(L, QuadraticLattice):
        a, b = _coords(L.theta, x)
        return a.denominator == 1 and b.denominator == 1
    if not x.is_rational:
        return False
    return L.contains(x.a)


def scaling_matrix(E: QuadraticLattice, lam) -> list[list[Fraction]]:
    """Rows are the coordinates of ``lam*1`` and ``lam*theta`` in the basis {1, theta}."""
    lam = as_quad(lam)
    theta = E.theta.value
    return [list(_coords(E.theta, lam)), list(_coords(E.theta, lam * theta))]


def _check_positive(lam) -> QuadExt:
    lam = as_quad(lam)
    if lam.sign() <= 0:
        raise NotPositive(f"{lam} is not positive")
    return lam


def scales(E: TraceGroup, lam) -> bool:
    """True iff ``lam*E == E``.

    For Z + Z*theta this is the determinant test: the coordinate matrix of
    ``lam`` acting on {1, theta} must be integral with determinant +-1.
    """
    lam = _check_positive(lam)
    L = _as_lattice(E)
    if isinstance(L, QuadraticLattice):
        (a, b), (c, d) = scaling_matrix(L, lam)
        if any(v.denominator != 1 for v in (a, b, c, d)):
            return False
        return a * d - b * c in (1, -1)
    if not lam.is_rational:
        return False
    return L.scales(lam.a)


def scales_by_inclusion(E: QuadraticLattice, lam) -> bool:
    """``lam*E == E`` checked directly: lam, lam*theta, 1/lam, theta/lam all in E."""
    lam = _check_positive(lam)
    theta = E.theta.value
    inv = lam.inverse()
    return all(contains(E, v) for v in (lam, lam * theta, inv, inv * theta))


def field_discriminant(d: int) -> int:
    """Discriminant of the maximal order of Q(sqrt(d)), d squarefree."""
    return d if d % 4 == 1 else 4 * d


# ---------------------------------------------------------------------------
# group presentations


@dataclass(frozen=True)
class GroupValue:
    # labels of unverifiable assumptions the value depends on
    assumed: frozenset = field(default=frozenset(), kw_only=True)

    def contains(self, lam) -> bool:
        return fg_contains(self, lam)

    def pretty(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class Trivial(GroupValue):
    def pretty(self):
        return "{1}"


@dataclass(frozen=True)
class InfiniteCyclic(GroupValue):
    generator: QuadExt

    def __post_init__(self):
        if not as_quad(self.generator) > 1:
            raise InvalidDescriptor(f"cyclic generator must exceed 1, got {self.generator}")

    def pretty(self):
        return f"<{self.generator.pretty()}>"


@dataclass(frozen=True)
class FreeAbelianOnPrimes(GroupValue):
    primes: tuple[int, ...]

    def __post_init__(self):
        ps = tuple(sorted(set(self.primes)))
        if not ps:
            raise InvalidDescriptor("prime set must be nonempty")
        for p in ps:
            if not is_prime(p):
                raise InvalidDescriptor(f"{p} is not prime")
        object.__setattr__(self, "primes", ps)

    def pretty(self):
        return "<" + ", ".join(map(str, self.primes)) + ">"


@dataclass(frozen=True)
class PositiveRationals(GroupValue):
    def pretty(self):
        return "Q_+^x"


@dataclass(frozen=True)
class LowerBoundOnly(GroupValue):
    """The subgroup generated by the factors; the true group may be larger."""

    factors: tuple[GroupValue, ...]

    def __post_init__(self):
        flat: list[GroupValue] = []
        for f in self.factors:
            if isinstance(f, LowerBoundOnly):
                flat.extend(f.factors)
            else:
                flat.append(f)
        object.__setattr__(self, "factors", tuple(flat))

    def generated(self) -> GroupValue:
        """Simplest presentation of the generated subgroup, when one exists."""
        p = _ProductGroup.of(self.factors)
        if p.irrational:
            if len(p.irrational) == 1 and not p.rational and not p.all_rationals:
                return InfiniteCyclic(p.irrational[0], assumed=self.assumed)
            return self
        if p.all_rationals:
            return PositiveRationals(assumed=self.assumed)
        if not p.rational:
            return Trivial(assumed=self.assumed)
        primes = sorted({q for r in p.rational for q in prime_factors(r.numerator) + prime_factors(r.denominator)})
        if all(_in_rational_group(Fraction(q), p.rational) for q in primes):
            return FreeAbelianOnPrimes(tuple(primes), assumed=self.assumed)
        if len(p.rational) == 1:
            return InfiniteCyclic(as_quad(max(p.rational[0], 1 / p.rational[0])), assumed=self.assumed)
        return self

    def pretty(self):
        g = self.generated()
        inner = g.pretty() if g is not self else " * ".join(f.pretty() for f in self.factors)
        return f"contains {inner}"


def _is_unit(x: QuadExt) -> bool:
    return x.is_integral() and x.norm() in (1, -1)


def power_exponent(g: QuadExt, x) -> int | None:
    """The integer n with ``g**n == x``, or None (g > 1 required)."""
    x = as_quad(x)
    if x.sign() <= 0:
        return None
    if x == 1:
        return 0
    if not x.is_rational and (g.is_rational or x.d != g.d):
        return None
    base, sgn = (g, 1) if x > 1 else (g.inverse(), -1)
    power, n = base, 1
    # g^n is monotone in n, so stop once it passes x
    while True:
        c = compare(power, x)
        if c == 0:
            return sgn * n
        if (c > 0) == (sgn > 0):
            return None
        power, n = power * base, n + 1


def _in_rational_group(r: Fraction, gens) -> bool:
    """Is the positive rational r a product of integer powers of `gens`?"""
    gens = [Fraction(g) for g in gens if g != 1]
    primes = sorted({p for g in gens for p in prime_factors(g.numerator) + prime_factors(g.denominator)})
    rest = _strip(r, primes)
    if rest != 1:
        return False
    if not primes:
        return True

    def vec(x: Fraction):
        return [valuation(x.numerator, p) - valuation(x.denominator, p) for p in primes]

    return _in_row_lattice(_hnf([vec(g) for g in gens]), vec(r))


def _strip(r: Fraction, primes) -> Fraction:
    num, den = r.numerator, r.denominator
    for p in primes:
        while num % p == 0:
            num //= p
        while den % p == 0:
            den //= p
    return Fraction(num, den)


@dataclass
class _ProductGroup:
    """Generators of a product of presented groups, sorted by kind."""

    all_rationals: bool
    rational: list  # Fractions; primes from FreeAbelianOnPrimes included
    irrational: list  # QuadExt

    @classmethod
    def of(cls, factors) -> "_ProductGroup":
        all_rat, rat, irr = False, [], []
        for f in factors:
            if isinstance(f, Trivial):
                continue
            if isinstance(f, PositiveRationals):
                all_rat = True
            elif isinstance(f, FreeAbelianOnPrimes):
                rat.extend(Fraction(p) for p in f.primes)
            elif isinstance(f, InfiniteCyclic):
                g = as_quad(f.generator)
                (rat if g.is_rational else irr).append(g.a if g.is_rational else g)
            else:
                raise TypeError(f"unexpected factor {f!r}")
        return cls(all_rat, rat, _merge_cyclic(irr))

    def rational_contains(self, r: Fraction, extra=()) -> bool:
        return self.all_rationals or _in_rational_group(r, [*self.rational, *extra])

    def contains(self, lam: QuadExt) -> bool:
        if not self.irrational:
            return lam.is_rational and self.rational_contains(lam.a)
        if len(self.irrational) > 1:
            raise UnsupportedComposition(
                "membership in a group with several independent irrational generators is not supported"
            )
        g = self.irrational[0]
        if not lam.is_rational and lam.d != g.d:
            return False
        if g.a == 0:
            # g = b*sqrt(d) has rational square; lam must be r or r*sqrt(d)
            c = (g * g).a
            if lam.is_rational:
                r = lam.a
            elif lam.a == 0:
                r = (lam / g).a
            else:
                return False
            return self.rational_contains(r, [c])
        # rational factors cancel in x/conj(x): solve (g/g')^n = lam/lam'
        n = _signed_power_exponent(g / g.conjugate(), lam / lam.conjugate())
        if n is None:
            return False
        r = lam / g**n
        return r.is_rational and r.sign() > 0 and self.rational_contains(r.a)


def _merge_cyclic(gens: list) -> list:
    out: list = []
    for g in gens:
        if g not in out:
            out.append(g)
    if len(out) <= 1:
        return out
    ds = {g.d for g in out}
    if len(ds) == 1 and all(_is_unit(g) for g in out):
        # all are powers of the fundamental unit of the maximal order
        eta = fundamental_unit(field_discriminant(ds.pop()))
        k = 0
        for g in out:
            e = power_exponent(eta, g)
            if e is None:
                return out
            k = gcd(k, e)
        return [eta**k]
    return out


def _signed_power_exponent(gamma: QuadExt, rho: QuadExt) -> int | None:
    """n with ``gamma**n == rho``; |gamma| != 1, gamma possibly negative."""
    ag, ar = abs(gamma), abs(rho)
    flip = ag < 1
    if flip:
        ag = ag.inverse()
    n = power_exponent(ag, ar)
    if n is None:
        return None
    if flip:
        n = -n
    return n if gamma**n == rho else None


def fg_contains(F: GroupValue, lam) -> bool:
    """Exact membership of ``lam > 0`` in the presented group."""
    lam = _check_positive(lam)
    if isinstance(F, Trivial):
        return lam == 1
    if isinstance(F, InfiniteCyclic):
        return power_exponent(F.generator, lam) is not None
    if isinstance(F, FreeAbelianOnPrimes):
        return lam.is_rational and _strip(lam.a, F.primes) == 1
    if isinstance(F, PositiveRationals):
        return lam.is_rational
    if isinstance(F, LowerBoundOnly):
        return _ProductGroup.of(F.factors).contains(lam)
    raise TypeError(f"not a group value: {F!r}")


def sample_member(F: GroupValue, rng: random.Random, max_exp: int = 6) -> QuadExt:
    """A random element of F, as a product of generator powers."""
    if isinstance(F, Trivial):
        return as_quad(1)
    if isinstance(F, InfiniteCyclic):
        return F.generator ** rng.randint(-max_exp, max_exp)
    if isinstance(F, FreeAbelianOnPrimes):
        return as_quad(prod(Fraction(p) ** rng.randint(-max_exp, max_exp) for p in F.primes))
    if isinstance(F, PositiveRationals):
        return as_quad(Fraction(rng.randint(1, 10**max_exp), rng.randint(1, 10**max_exp)))
    if isinstance(F, LowerBoundOnly):
        x = as_quad(1)
        for f in F.factors:
            y = sample_member(f, rng, max_exp)
            if not (x.is_rational or y.is_rational or x.d == y.d):
                raise UnsupportedComposition("factors live in different quadratic fields")
            x = x * y
        return x
    raise TypeError(f"not a group value: {F!r}")


# ---------------------------------------------------------------------------
# inner multiplier groups


def verify_quadratic_generator(E: QuadraticLattice, eps: QuadExt) -> None:
    """Prove that ``eps`` generates IM_+(E) using only the determinant test.

    Every element of IM_+(E) is an eigenvalue of an integer matrix with
    determinant +-1, hence a positive unit of the maximal order, hence a
    power of its fundamental unit ``eta``. ``eps`` generates IM_+(E) iff
    ``eps == eta**j`` where j is the least positive exponent that scales E.
    """
    eta = fundamental_unit(field_discriminant(E.theta.value.d))
    j = power_exponent(eta, eps)
    if j is None or j <= 0:
        raise InvariantViolation(f"{eps} is not a positive power of the unit {eta}")
    for i in range(1, j):
        if scales(E, eta**i):
            raise InvariantViolation(f"{eta}^{i} already scales E; {eps} is not the generator")
    if not scales(E, eps):
        raise InvariantViolation(f"{eps} does not scale E")


def inner_multiplier_group(E: TraceGroup) -> GroupValue:
    """IM_+(E) as a presentation."""
    if isinstance(E, RingByDescriptor):
        return units_positive(E.ring)
    L = _as_lattice(E)
    if isinstance(L, QuadraticLattice):
        # IM(Z + Z theta) is the unit group of Z[k theta], whose discriminant equals D_theta
        eps = fundamental_unit(L.theta.discriminant)
        if not scales(L, eps):
            raise InvariantViolation(f"fundamental unit {eps} fails the determinant test on {E}")
        return InfiniteCyclic(eps)
    primes = L.infinite_primes
    return FreeAbelianOnPrimes(primes) if primes else Trivial()


def units_positive(r: RingDescriptor) -> GroupValue:
    if isinstance(r, LocalizationOfZ):
        return FreeAbelianOnPrimes(r.primes)
    if isinstance(r, QuadraticOrder):
        return InfiniteCyclic(fundamental_unit(r.D))
    if isinstance(r, FullRationals):
        return PositiveRationals()
    raise TypeError(f"not a ring descriptor: {r!r}")


# ---------------------------------------------------------------------------
# the ring generated by a group


@dataclass(frozen=True)
class GeneratedRing:
    """A supported ring attached to the generated group.

    ``exact`` means ``ring`` equals the ring spanned by the group; otherwise
    ``ring`` is only a subring of it. ``witness``, when present, is a
    positive unit of ``ring`` outside the group, which shows the group is
    not ``IM_+(E)`` for any E.
    """

    ring: RingDescriptor
    exact: bool
    witness: QuadExt | None = None


@dataclass(frozen=True)
class Unrepresentable:
    reason: str
    witness: QuadExt | None = None


def _hnf(rows: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite form (echelon basis) of the integer row lattice."""
    rows = [list(r) for r in rows if any(r)]
    out = []
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = [r for r in rows if r[c] != 0]
        rest = [r for r in rows if r[c] == 0]
        while len(piv) > 1:
            piv.sort(key=lambda r: abs(r[c]))
            head = piv[0]
            nxt = [head]
            for r in piv[1:]:
                q = r[c] // head[c]
                r = [x - q * y for x, y in zip(r, head)]
                (nxt if r[c] != 0 else rest).append(r)
            piv = nxt
        if piv:
            h = piv[0]
            if h[c] < 0:
                h = [-x for x in h]
            out.append(h)
        rows = [r for r in rest if any(r)]
    return out


def _in_row_lattice(basis: list[list[int]], v: list[int]) -> bool:
    v = list(v)
    for h in basis:
        c = next(i for i, x in enumerate(h) if x)
        if v[c] % h[c]:
            return False
        q = v[c] // h[c]
        v = [x - q * y for x, y in zip(v, h)]
    return not any(v)


def _integral_coordinate(g: QuadExt) -> int:
    """y with g = x + y*omega_K in the maximal order (g integral)."""
    if g.d % 4 == 1:
        return int(2 * g.b)
    return int(g.b)


def ring_generated_by_group(gens) -> GeneratedRing | Unrepresentable:
    """The ring spanned additively by the group generated by `gens`."""
    gens = [as_quad(g) for g in gens]
    for g in gens:
        if g.sign() <= 0:
            raise NotPositive(f"generator {g} is not positive")
    gens = [g for g in gens if g != 1]
    rational = [g for g in gens if g.is_rational]
    quadratic = [g for g in gens if not g.is_rational]
    if rational and quadratic:
        return Unrepresentable("mixed rational and quadratic generators (S-unit rings are not supported)")
    if not gens:
        return Unrepresentable("the group is trivial; the ring is Z itself")
    if rational:
        return _rational_ring(rational)
    if len({g.d for g in quadratic}) > 1:
        return Unrepresentable("generators from different quadratic fields")
    return _quadratic_ring(quadratic)


def _rational_ring(gens: list[QuadExt]) -> GeneratedRing:
    # Z[a/b, b/a] = Z[1/(ab)] when gcd(a, b) = 1
    fr = [g.a for g in gens]
    primes = sorted({p for r in fr for p in prime_factors(r.numerator) + prime_factors(r.denominator)})
    ring = LocalizationOfZ(prod(primes))
    rows = [
        [valuation(r.numerator, p) - valuation(r.denominator, p) for p in primes]
        for r in fr
    ]
    basis = _hnf(rows)
    witness = None
    for i, p in enumerate(primes):
        e = [0] * len(primes)
        e[i] = 1
        if not _in_row_lattice(basis, e):
            witness = as_quad(p)
            break
    return GeneratedRing(ring, True, witness)


def _quadratic_ring(gens: list[QuadExt]) -> GeneratedRing | Unrepresentable:
    integral = []
    for g in gens:
        if g.is_integral():
            integral.append(g)
        elif g.inverse().is_integral():
            integral.append(g.inverse())
        else:
            return Unrepresentable(f"neither {g} nor its inverse is an algebraic integer")
    d = integral[0].d
    f = 0
    for g in integral:
        f = gcd(f, _integral_coordinate(g))
    D = f * f * field_discriminant(d)
    ring = QuadraticOrder(D)
    eps = fundamental_unit(D)
    if all(_is_unit(g) for g in integral):
        k = 0
        for g in integral:
            n = power_exponent(eps, g if g > 1 else g.inverse())
            if n is None:
                raise InvariantViolation(f"unit {g} is not a power of {eps}")
            k = gcd(k, n)
        return GeneratedRing(ring, True, None if k == 1 else eps.inverse())
    if len(integral) == 1:
        # N(g^n) = N(g)^n is never +-1 for n != 0, so no nontrivial unit is in <g>
        return GeneratedRing(ring, False, eps.inverse())
    return GeneratedRing(ring, False, None)

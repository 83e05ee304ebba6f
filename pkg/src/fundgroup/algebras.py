"""Catalog of algebras: trace groups and fundamental groups.

Each descriptor names a unital simple C*-algebra with unique trace. The
fundamental group is computed by reducing to its trace group
``E = tau_*(K_0(A))`` and the inner multipliers of E, plus the class-specific
argument that every inner multiplier is realized.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from math import lcm
from typing import Union

from .errors import InvalidDescriptor, InvariantViolation, NoTraceGroupRule, NotApplicable, UnsupportedComposition
from .minpoly import DeclaredNonQuadratic, QuadraticIrrational, ThetaClass, classify
from .tracegroup import (
    GroupValue,
    LowerBoundOnly,
    QuadraticLattice,
    RationalLattice,
    RingByDescriptor,
    RingDescriptor,
    SupernaturalModule,
    SupernaturalNumber,
    TraceGroup,
    Trivial,
    inner_multiplier_group,
    units_positive,
)

__all__ = [
    "IrrationalRotation",
    "UHF",
    "ReducedFreeGroup",
    "FreeProduct",
    "AF",
    "TensorWithFreeGroup",
    "TensorMin",
    "AlgebraDescriptor",
    "Exactness",
    "FgResult",
    "trace_k0",
    "fundamental_group",
    "check_torsion_free_rank_one",
    "DECLARED_NON_QUADRATIC",
    "SEPARATING_TRACE",
]

# assumption labels
DECLARED_NON_QUADRATIC = "declared-non-quadratic"
SEPARATING_TRACE = "separating-trace"

# provenance anchors
_P_IM = "F(A) is contained in IM_+(tau_*(K_0(A)))"
_P_ROT_TRACE = "tau_*(K_0(A_theta)) = Z + Z*theta"
_P_ROT = "A_theta is an AT algebra of real rank zero: F(A_theta) = IM_+(Z + Z*theta), given tau_* is an order isomorphism on K_0"
_P_PELL = "quadratic theta: generator (t + u*sqrt(D_theta))/2 from the least solution > 1 of t^2 - D_theta*u^2 = +-4"
_P_REDUCE = "non-integral theta: IM(Z + Z*theta) = units of Z[k*theta], and D_theta = D_(k*theta)"
_P_NONQUAD = "non-quadratic theta: (Z + Z*theta) meets its set of inverses only in {1}"
_P_UHF = "UHF: tau_*(K_0) = rationals with denominators dividing m; F = <primes of infinite exponent>"
_P_FREE = "K_0(C*_r(F_n)) = Z, so F = {1}"
_P_FREEPROD = "C*_r(Z/n * Z/m): tau_*(K_0) = (1/lcm(n, m))Z"
_P_CYCLIC = "cyclic trace group: F lies in the finite set E cap (0, 1] and its inverses, so F = {1}"
_P_AF = "simple AF algebra with dimension group (R, R_+, 1): F = R^x_+"
_P_TENSOR_FG = "tau_*(K_0(A (x) C*_r(F_n))) = tau_*(K_0(A)), and F(A) is contained in F(A (x) C*_r(F_n))"
_P_TENSOR_FG_AF = "AF (x) C*_r(F_n): valid when the trace separates equivalence classes of projections"
_P_TENSOR_MIN = "F(A) F(B) is contained in F(A (x)_min B); containment only"


@dataclass(frozen=True)
class IrrationalRotation:
    theta: ThetaClass

    def __post_init__(self):
        theta = self.theta
        if not isinstance(theta, (QuadraticIrrational, DeclaredNonQuadratic)):
            theta = classify(theta)
            object.__setattr__(self, "theta", theta)
        if isinstance(theta, Fraction):
            raise InvalidDescriptor(f"rotation angle must be irrational, got {theta}")


@dataclass(frozen=True)
class UHF:
    m: SupernaturalNumber


@dataclass(frozen=True)
class ReducedFreeGroup:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise InvalidDescriptor(f"free group needs n >= 2 generators, got {self.n}")


@dataclass(frozen=True)
class FreeProduct:
    """C*_r(Z/n * Z/m)."""

    n: int
    m: int

    def __post_init__(self):
        if self.n < 1 or self.m < 1 or (self.n - 1) * (self.m - 1) < 2:
            raise InvalidDescriptor(f"free product needs (n-1)(m-1) >= 2, got n={self.n}, m={self.m}")


@dataclass(frozen=True)
class AF:
    ring: RingDescriptor


@dataclass(frozen=True)
class TensorWithFreeGroup:
    inner: "AlgebraDescriptor"
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise InvalidDescriptor(f"free group needs n >= 2 generators, got {self.n}")


@dataclass(frozen=True)
class TensorMin:
    left: "AlgebraDescriptor"
    right: "AlgebraDescriptor"


AlgebraDescriptor = Union[IrrationalRotation, UHF, ReducedFreeGroup, FreeProduct, AF, TensorWithFreeGroup, TensorMin]


class Exactness(str, Enum):
    EXACT = "exact"
    LOWER_BOUND = "lower-bound"


@dataclass(frozen=True)
class FgResult:
    group: GroupValue
    exactness: Exactness = Exactness.EXACT
    trace_group: TraceGroup | None = None
    provenance: tuple[str, ...] = ()
    # hypotheses the result depends on but cannot check
    assumptions: frozenset = field(default=frozenset())

    @property
    def flags(self) -> frozenset:
        return self.group.assumed | self.assumptions


def trace_k0(A: AlgebraDescriptor) -> TraceGroup:
    """The trace image ``tau_*(K_0(A))``."""
    if isinstance(A, IrrationalRotation):
        if isinstance(A.theta, DeclaredNonQuadratic):
            raise NoTraceGroupRule(f"Z + Z*theta for declared {A.theta} has no exact representation")
        return QuadraticLattice(A.theta)
    if isinstance(A, UHF):
        return SupernaturalModule(A.m)
    if isinstance(A, ReducedFreeGroup):
        return RationalLattice(1)
    if isinstance(A, FreeProduct):
        return RationalLattice(lcm(A.n, A.m))
    if isinstance(A, AF):
        return RingByDescriptor(A.ring)
    if isinstance(A, TensorWithFreeGroup):
        return trace_k0(A.inner)
    if isinstance(A, TensorMin):
        raise NoTraceGroupRule("no general rule for the trace group of a minimal tensor product")
    raise TypeError(f"not an algebra descriptor: {A!r}")


def fundamental_group(A: AlgebraDescriptor) -> FgResult:
    if isinstance(A, IrrationalRotation):
        theta = A.theta
        if isinstance(theta, DeclaredNonQuadratic):
            return FgResult(
                Trivial(assumed=frozenset({DECLARED_NON_QUADRATIC})),
                provenance=(_P_ROT_TRACE, _P_ROT, _P_NONQUAD),
            )
        E = QuadraticLattice(theta)
        prov = (_P_ROT_TRACE, _P_ROT, _P_PELL) + ((_P_REDUCE,) if theta.k > 1 else ())
        return FgResult(inner_multiplier_group(E), trace_group=E, provenance=prov)
    if isinstance(A, UHF):
        E = SupernaturalModule(A.m)
        return FgResult(inner_multiplier_group(E), trace_group=E, provenance=(_P_IM, _P_UHF))
    if isinstance(A, ReducedFreeGroup):
        return FgResult(Trivial(), trace_group=RationalLattice(1), provenance=(_P_FREE, _P_CYCLIC))
    if isinstance(A, FreeProduct):
        return FgResult(Trivial(), trace_group=trace_k0(A), provenance=(_P_FREEPROD, _P_CYCLIC))
    if isinstance(A, AF):
        E = RingByDescriptor(A.ring)
        return FgResult(units_positive(A.ring), trace_group=E, provenance=(_P_IM, _P_AF))
    if isinstance(A, TensorWithFreeGroup):
        inner = A.inner
        if not isinstance(inner, (IrrationalRotation, UHF, AF, ReducedFreeGroup, FreeProduct)):
            raise UnsupportedComposition(
                f"tensor with C*_r(F_n) is only covered for a rotation, UHF, AF, free group or free product algebra, "
                f"not {type(inner).__name__}"
            )
        r = fundamental_group(inner)
        extra = frozenset({SEPARATING_TRACE}) if isinstance(inner, AF) else frozenset()
        prov = r.provenance + (_P_TENSOR_FG,) + ((_P_TENSOR_FG_AF,) if extra else ())
        return replace(r, provenance=prov, assumptions=r.assumptions | extra)
    if isinstance(A, TensorMin):
        left, right = fundamental_group(A.left), fundamental_group(A.right)
        group = LowerBoundOnly(
            (left.group, right.group), assumed=left.group.assumed | right.group.assumed
        )
        return FgResult(
            group,
            Exactness.LOWER_BOUND,
            None,
            tuple(dict.fromkeys(left.provenance + right.provenance + (_P_TENSOR_MIN,))),
            left.assumptions | right.assumptions,
        )
    raise TypeError(f"not an algebra descriptor: {A!r}")


def check_torsion_free_rank_one(A: AlgebraDescriptor) -> bool:
    """Cross-check: a cyclic trace group forces a trivial fundamental group."""
    try:
        E = trace_k0(A)
    except NoTraceGroupRule as exc:
        raise NotApplicable(str(exc)) from exc
    if not isinstance(E, RationalLattice):
        raise NotApplicable(f"trace group {E} is not cyclic")
    g = fundamental_group(A).group
    if not isinstance(g, Trivial):
        raise InvariantViolation(f"cyclic trace group but fundamental group {g}")
    return True

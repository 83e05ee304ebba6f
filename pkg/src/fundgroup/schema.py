"""Stable JSON schema for results.

Every object is a JSON dict with a ``"type"`` key naming its class. Exact
numbers are encoded as strings: rationals as ``"p/q"`` and infinite
exponents as ``"inf"``. ``decode(encode(x)) == x`` for every supported value.

=====================  ==============================================
type                   fields
=====================  ==============================================
QuadExt                a, b (rational strings), d (int), expr (info)
QuadraticIrrational    k, l, m, root_sign
DeclaredNonQuadratic   label
SupernaturalNumber     factors: [[p, e | "inf"], ...]
LocalizationOfZ        n
QuadraticOrder         D
FullRationals          (none)
RationalLattice        q
QuadraticLattice       theta
SupernaturalModule     m
RingByDescriptor       ring
Trivial, PositiveRationals
                       assumed: [label, ...]
InfiniteCyclic         generator, assumed
FreeAbelianOnPrimes    primes, assumed
LowerBoundOnly         factors, assumed
FgResult               group, exactness, trace_group | null,
                       provenance, assumptions
PellSolution           D, t, u, sign, epsilon0 (info)
MinpolyResult          theta, discriminant, preperiod, period
ImResult               lam, trace_group, scales, group, member
SweepResult            rows: [SweepRow, ...]
SweepRow               module_id, n, k, rank, T, resample_spread,
                       rank_deviation, mult_deviation,
                       gram_idempotence, reconstruction
OutputRecord           command, query, result, flags, citations,
                       verified | null
=====================  ==============================================

Fields marked "info" are emitted for readability and ignored on decode.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import inf
from typing import Any

from .algebras import Exactness, FgResult
from .exact import QuadExt
from .minpoly import DeclaredNonQuadratic, QuadraticIrrational
from .modframe import SweepResult, SweepRow
from .pell import PellSolution
from .tracegroup import (
    FreeAbelianOnPrimes,
    FullRationals,
    GroupValue,
    InfiniteCyclic,
    LocalizationOfZ,
    LowerBoundOnly,
    PositiveRationals,
    QuadraticLattice,
    QuadraticOrder,
    RationalLattice,
    RingByDescriptor,
    SupernaturalModule,
    SupernaturalNumber,
    Trivial,
)

__all__ = ["MinpolyResult", "ImResult", "OutputRecord", "encode", "decode", "dumps", "loads"]


@dataclass(frozen=True)
class MinpolyResult:
    theta: QuadraticIrrational
    discriminant: int
    preperiod: tuple[int, ...]
    period: tuple[int, ...]


@dataclass(frozen=True)
class ImResult:
    lam: QuadExt
    trace_group: Any
    scales: bool
    # fundamental group of the rotation algebra (or other algebra) with this trace group
    group: GroupValue | None = None
    member: bool | None = None


@dataclass(frozen=True)
class OutputRecord:
    command: str
    query: str
    result: Any
    flags: tuple[str, ...] = ()
    citations: tuple[str, ...] = ()
    verified: bool | None = None


def _exp(e):
    return "inf" if e == inf else e


def _unexp(e):
    return inf if e == "inf" else int(e)


def _assumed(g: GroupValue) -> list[str]:
    return sorted(g.assumed)


def encode(x) -> Any:
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, float):
        return float(x)
    t = type(x).__name__
    if isinstance(x, QuadExt):
        return {"type": t, "a": str(x.a), "b": str(x.b), "d": x.d, "expr": str(x)}
    if isinstance(x, QuadraticIrrational):
        return {"type": t, "k": x.k, "l": x.l, "m": x.m, "root_sign": x.root_sign}
    if isinstance(x, DeclaredNonQuadratic):
        return {"type": t, "label": x.label}
    if isinstance(x, SupernaturalNumber):
        return {"type": t, "factors": [[p, _exp(e)] for p, e in x.factors]}
    if isinstance(x, LocalizationOfZ):
        return {"type": t, "n": x.n}
    if isinstance(x, QuadraticOrder):
        return {"type": t, "D": x.D}
    if isinstance(x, FullRationals):
        return {"type": t}
    if isinstance(x, RationalLattice):
        return {"type": t, "q": x.q}
    if isinstance(x, QuadraticLattice):
        return {"type": t, "theta": encode(x.theta)}
    if isinstance(x, SupernaturalModule):
        return {"type": t, "m": encode(x.m)}
    if isinstance(x, RingByDescriptor):
        return {"type": t, "ring": encode(x.ring)}
    if isinstance(x, (Trivial, PositiveRationals)):
        return {"type": t, "assumed": _assumed(x)}
    if isinstance(x, InfiniteCyclic):
        return {"type": t, "generator": encode(x.generator), "assumed": _assumed(x)}
    if isinstance(x, FreeAbelianOnPrimes):
        return {"type": t, "primes": list(x.primes), "assumed": _assumed(x)}
    if isinstance(x, LowerBoundOnly):
        return {"type": t, "factors": [encode(f) for f in x.factors], "assumed": _assumed(x)}
    if isinstance(x, FgResult):
        return {
            "type": t,
            "group": encode(x.group),
            "exactness": x.exactness.value,
            "trace_group": encode(x.trace_group),
            "provenance": list(x.provenance),
            "assumptions": sorted(x.assumptions),
        }
    if isinstance(x, PellSolution):
        return {"type": t, "D": x.D, "t": x.t, "u": x.u, "sign": x.sign, "epsilon0": encode(x.epsilon0)}
    if isinstance(x, MinpolyResult):
        return {
            "type": t,
            "theta": encode(x.theta),
            "discriminant": x.discriminant,
            "preperiod": list(x.preperiod),
            "period": list(x.period),
        }
    if isinstance(x, ImResult):
        return {
            "type": t,
            "lam": encode(x.lam),
            "trace_group": encode(x.trace_group),
            "scales": x.scales,
            "group": encode(x.group),
            "member": x.member,
        }
    if isinstance(x, SweepRow):
        d = {"type": t}
        for name in SweepRow.__dataclass_fields__:
            v = getattr(x, name)
            d[name] = float(v) if isinstance(v, float) else int(v)
        return d
    if isinstance(x, SweepResult):
        return {"type": t, "rows": [encode(r) for r in x.rows]}
    if isinstance(x, OutputRecord):
        return {
            "type": t,
            "command": x.command,
            "query": x.query,
            "result": encode(x.result),
            "flags": list(x.flags),
            "citations": list(x.citations),
            "verified": x.verified,
        }
    raise TypeError(f"cannot encode {x!r}")


def decode(d) -> Any:
    if not isinstance(d, dict):
        return d
    t = d.get("type")
    assumed = frozenset(d.get("assumed", ()))
    if t == "QuadExt":
        return QuadExt(Fraction(d["a"]), Fraction(d["b"]), d["d"])
    if t == "QuadraticIrrational":
        return QuadraticIrrational(d["k"], d["l"], d["m"], d["root_sign"])
    if t == "DeclaredNonQuadratic":
        return DeclaredNonQuadratic(d["label"])
    if t == "SupernaturalNumber":
        return SupernaturalNumber(tuple((int(p), _unexp(e)) for p, e in d["factors"]))
    if t == "LocalizationOfZ":
        return LocalizationOfZ(d["n"])
    if t == "QuadraticOrder":
        return QuadraticOrder(d["D"])
    if t == "FullRationals":
        return FullRationals()
    if t == "RationalLattice":
        return RationalLattice(d["q"])
    if t == "QuadraticLattice":
        return QuadraticLattice(decode(d["theta"]))
    if t == "SupernaturalModule":
        return SupernaturalModule(decode(d["m"]))
    if t == "RingByDescriptor":
        return RingByDescriptor(decode(d["ring"]))
    if t == "Trivial":
        return Trivial(assumed=assumed)
    if t == "PositiveRationals":
        return PositiveRationals(assumed=assumed)
    if t == "InfiniteCyclic":
        return InfiniteCyclic(decode(d["generator"]), assumed=assumed)
    if t == "FreeAbelianOnPrimes":
        return FreeAbelianOnPrimes(tuple(d["primes"]), assumed=assumed)
    if t == "LowerBoundOnly":
        return LowerBoundOnly(tuple(decode(f) for f in d["factors"]), assumed=assumed)
    if t == "FgResult":
        return FgResult(
            decode(d["group"]),
            Exactness(d["exactness"]),
            decode(d["trace_group"]),
            tuple(d["provenance"]),
            frozenset(d["assumptions"]),
        )
    if t == "PellSolution":
        return PellSolution(d["D"], d["t"], d["u"], d["sign"])
    if t == "MinpolyResult":
        return MinpolyResult(decode(d["theta"]), d["discriminant"], tuple(d["preperiod"]), tuple(d["period"]))
    if t == "ImResult":
        return ImResult(decode(d["lam"]), decode(d["trace_group"]), d["scales"], decode(d["group"]), d["member"])
    if t == "SweepRow":
        return SweepRow(**{k: v for k, v in d.items() if k != "type"})
    if t == "SweepResult":
        return SweepResult(tuple(decode(r) for r in d["rows"]))
    if t == "OutputRecord":
        return OutputRecord(
            d["command"],
            d["query"],
            decode(d["result"]),
            tuple(d["flags"]),
            tuple(d["citations"]),
            d["verified"],
        )
    raise ValueError(f"unknown schema type {t!r}")


def dumps(x, **kw) -> str:
    return json.dumps(encode(x), **kw)


def loads(s: str):
    return decode(json.loads(s))

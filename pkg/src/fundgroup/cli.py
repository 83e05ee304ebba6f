"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 unsupported composition,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import schema
from .algebras import fundamental_group
from .dsl import format_algebra, format_ring, parse_algebra, parse_trace_group
from .errors import FundGroupError, InputError, InvariantViolation, NoTraceGroupRule, UnsupportedComposition
from .minpoly import cf_expansion, discriminant, minimal_polynomial, parse_expr
from .modframe import sweep
from .pell import DEFAULT_U_MAX, brute_force_pell4, solve_pell4
from .schema import ImResult, MinpolyResult, OutputRecord
from .tracegroup import (
    InfiniteCyclic,
    QuadraticLattice,
    RationalLattice,
    RingByDescriptor,
    SupernaturalModule,
    fg_contains,
    inner_multiplier_group,
    sample_member,
    scales,
    scales_by_inclusion,
    verify_quadratic_generator,
)

__all__ = ["main", "build_parser", "run"]

EXIT_OK, EXIT_INPUT, EXIT_UNSUPPORTED, EXIT_INVARIANT = 0, 2, 3, 4

_P_PELL_SOLVER = "continued fraction of (s + sqrt(D))/2: first convergent with t^2 - D*u^2 = +-4"
_P_MINPOLY = "primitive integer polynomial k*x^2 + l*x + m with k > 0, discriminant l^2 - 4km"
_P_IM = "IM_+(E): t > 0 with t, 1/t in E and tE = E; for Z + Z*theta, det of the scaling matrix is +-1"
_P_TMAP = "T = sum_i tr(<xi_i, xi_i>) over a frame; equals (tau (x) Tr)(p) = rank/n on p (M_n)^k"


def describe_trace_group(E) -> str:
    if isinstance(E, QuadraticLattice):
        return f"Z + Z*({E.theta.value.pretty()})"
    if isinstance(E, RationalLattice):
        return "Z" if E.q == 1 else f"(1/{E.q})Z"
    if isinstance(E, SupernaturalModule):
        return f"Z[{E.m}] (denominators dividing {E.m})"
    if isinstance(E, RingByDescriptor):
        return f"ring {format_ring(E.ring)}"
    return "not determined"


def _verify_quadratic(E: QuadraticLattice, g: InfiniteCyclic, u_max: int) -> None:
    D = discriminant(E.theta.scaled())
    sol = solve_pell4(D)
    oracle = brute_force_pell4(D, u_max)
    if oracle is not None and oracle != sol:
        raise InvariantViolation(f"Pell solver {sol} disagrees with oracle {oracle}")
    verify_quadratic_generator(E, g.generator)
    eps = g.generator
    for lam in (eps, eps.inverse()):
        if scales(E, lam) != scales_by_inclusion(E, lam) or not scales(E, lam):
            raise InvariantViolation(f"determinant and inclusion tests disagree on {lam}")


def cmd_fg(algebra: str, verify: bool = False, u_max: int = DEFAULT_U_MAX) -> OutputRecord:
    A = parse_algebra(algebra)
    res = fundamental_group(A)
    verified = None
    if verify:
        verified = True
        E, g = res.trace_group, res.group
        if isinstance(E, QuadraticLattice) and isinstance(g, InfiniteCyclic):
            _verify_quadratic(E, g, u_max)
        if E is not None:
            rng = random.Random(0)
            for _ in range(20):
                lam = sample_member(g, rng)
                if not scales(E, lam):
                    raise InvariantViolation(f"member {lam} of {g.pretty()} does not scale the trace group")
    return OutputRecord("fg", format_algebra(A), res, tuple(sorted(res.flags)), res.provenance, verified)


def cmd_pell(D: int, verify: bool = False, u_max: int = DEFAULT_U_MAX) -> OutputRecord:
    sol = solve_pell4(D)
    verified = None
    flags: tuple[str, ...] = ()
    if verify:
        oracle = brute_force_pell4(D, u_max)
        if oracle is None:
            flags = ("oracle-range-exceeded",)
        elif oracle != sol:
            raise InvariantViolation(f"Pell solver {sol} disagrees with oracle {oracle}")
        else:
            verified = True
    return OutputRecord("pell", str(D), sol, flags, (_P_PELL_SOLVER,), verified)


def cmd_minpoly(expr: str) -> OutputRecord:
    x = parse_expr(expr)
    q = minimal_polynomial(x)
    pre, per = cf_expansion(q)
    res = MinpolyResult(q, discriminant(q), tuple(pre), tuple(per))
    return OutputRecord("minpoly", str(x), res, (), (_P_MINPOLY,))


def cmd_im(lam: str, group: str, verify: bool = False) -> OutputRecord:
    x = parse_expr(lam)
    E = parse_trace_group(group)
    s = scales(E, x)
    F = inner_multiplier_group(E)
    member = fg_contains(F, x)
    if member != s:
        raise InvariantViolation(f"scaling test ({s}) and group membership ({member}) disagree on {x}")
    verified = None
    if verify:
        if isinstance(E, QuadraticLattice) and scales_by_inclusion(E, x) != s:
            raise InvariantViolation(f"determinant and inclusion tests disagree on {x}")
        verified = True
    return OutputRecord("im", f"{x} on {group.strip()}", ImResult(x, E, s, F, member), (), (_P_IM,), verified)


def cmd_tmap(n: int, k: int, rank: int, trials: int, seed: int, resamples: int = 5) -> OutputRecord:
    res = sweep(n, k, rank, trials, seed, resamples)
    query = f"n={n} k={k} rank={rank} trials={trials} seed={seed}"
    return OutputRecord("tmap", query, res, (), (_P_TMAP,))


# ---------------------------------------------------------------------------
# text rendering


def _text(rec: OutputRecord) -> str:
    r = rec.result
    lines = [f"query: {rec.query}"]
    if rec.command == "fg":
        lines.append(f"group: {r.group.pretty()} ({type(r.group).__name__})")
        if isinstance(r.group, InfiniteCyclic):
            lines.append(f"generator: {r.group.generator}")
        lines.append(f"exactness: {r.exactness.value}")
        lines.append(f"trace group: {describe_trace_group(r.trace_group)}")
    elif rec.command == "pell":
        lines += [f"t = {r.t}", f"u = {r.u}", f"sign = {r.sign:+d}", f"epsilon0 = {r.epsilon0}"]
    elif rec.command == "minpoly":
        q = r.theta
        lines += [
            f"(k, l, m) = ({q.k}, {q.l}, {q.m})",
            f"discriminant = {r.discriminant}",
            f"continued fraction = [{', '.join(map(str, r.preperiod))}; ({', '.join(map(str, r.period))})]",
        ]
    elif rec.command == "im":
        lines += [
            f"trace group: {describe_trace_group(r.trace_group)}",
            f"scales = {str(r.scales).lower()}",
            f"group: {r.group.pretty()}",
            f"member = {str(r.member).lower()}",
        ]
    elif rec.command == "tmap":
        lines.append(r.to_csv().rstrip("\n"))
        lines += [
            f"max resample spread = {r.max_spread:.3e}",
            f"max |T - rank/n| = {r.max_rank_deviation:.3e}",
            f"max multiplicativity deviation = {r.max_mult_deviation:.3e}",
        ]
    if rec.flags:
        lines.append("flags: " + ", ".join(rec.flags))
    if rec.verified is not None:
        lines.append(f"verified: {str(rec.verified).lower()}")
    lines.append("citations:")
    lines += [f"  - {c}" for c in rec.citations]
    return "\n".join(lines)


def emit(rec: OutputRecord, fmt: str) -> str:
    return schema.dumps(rec, indent=2) if fmt == "json" else _text(rec)


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--verify", action="store_true", help="rerun the brute-force oracles inline")
    common.add_argument("--u-max", type=int, default=DEFAULT_U_MAX, help="range of the brute-force Pell oracle")

    p = argparse.ArgumentParser(prog="fundgroup", description="Fundamental groups of simple C*-algebras with unique trace.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("fg", parents=[common], help="fundamental group of an algebra")
    s.add_argument("algebra", help='algebra, e.g. "rotation(sqrt(3))"')

    s = sub.add_parser("pell", parents=[common], help="fundamental unit of discriminant D")
    s.add_argument("D", type=int)

    s = sub.add_parser("minpoly", parents=[common], help="minimal polynomial of a quadratic irrational")
    s.add_argument("expr")

    s = sub.add_parser("im", parents=[common], help="does lambda lie in IM_+(E)?")
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--group", required=True, help='trace group or algebra, e.g. "zlattice(sqrt(3))"')

    s = sub.add_parser("tmap", parents=[common], help="numerical sweep of T over random modules")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--rank", type=int, required=True)
    s.add_argument("--trials", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--resamples", type=int, default=5)
    return p


def run(args: argparse.Namespace) -> OutputRecord:
    if args.command == "fg":
        return cmd_fg(args.algebra, args.verify, args.u_max)
    if args.command == "pell":
        return cmd_pell(args.D, args.verify, args.u_max)
    if args.command == "minpoly":
        return cmd_minpoly(args.expr)
    if args.command == "im":
        return cmd_im(args.lam, args.group, args.verify)
    if args.command == "tmap":
        return cmd_tmap(args.n, args.k, args.rank, args.trials, args.seed, args.resamples)
    raise AssertionError(args.command)


def _report(exc: Exception) -> None:
    print(f"error: {exc}", file=sys.stderr)
    text, pos = getattr(exc, "text", None), getattr(exc, "position", None)
    if text is not None and pos is not None:
        print(f"  {text}\n  {' ' * pos}^", file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rec = run(args)
    except InputError as exc:
        _report(exc)
        return EXIT_INPUT
    except (UnsupportedComposition, NoTraceGroupRule) as exc:
        _report(exc)
        return EXIT_UNSUPPORTED
    except InvariantViolation as exc:
        _report(exc)
        return EXIT_INVARIANT
    except FundGroupError as exc:
        _report(exc)
        return EXIT_INPUT
    print(emit(rec, args.format))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

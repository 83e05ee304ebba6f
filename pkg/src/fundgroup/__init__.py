"""Fundamental groups of unital simple C*-algebras with unique trace.

The computation is reduced to exact number theory: the trace image of K_0,
its inner multipliers, minimal polynomials and fundamental units. A small
numerical lab in :mod:`fundgroup.modframe` checks the trace functional on
finite-dimensional Hilbert modules.
"""

from .algebras import fundamental_group, trace_k0
from .dsl import parse_algebra, parse_trace_group
from .exact import QuadExt
from .minpoly import minimal_polynomial, parse_expr
from .pell import fundamental_unit, solve_pell4

__version__ = "0.1.0"

__all__ = [
    "QuadExt",
    "parse_expr",
    "minimal_polynomial",
    "solve_pell4",
    "fundamental_unit",
    "parse_algebra",
    "parse_trace_group",
    "fundamental_group",
    "trace_k0",
]

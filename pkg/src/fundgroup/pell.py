"""Fundamental units of real quadratic orders via ``t^2 - D u^2 = +-4``.

The order of discriminant ``D`` is ``Z[w]`` with ``w = (s + sqrt(D))/2`` and
``s = D mod 2``. Its units are exactly ``(t + u sqrt(D))/2`` with
``t^2 - D u^2 = +-4``, and the least one above 1 generates the positive
unit group.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

import numpy as np

from .errors import InvalidDiscriminant, InvariantViolation, NotADiscriminant
from .exact import QuadExt, is_square
from .minpoly import convergents, surd_quotients

__all__ = [
    "PellSolution",
    "check_discriminant",
    "solve_pell4",
    "brute_force_pell4",
    "brute_force_units",
    "unit_power",
    "fundamental_unit",
    "DEFAULT_U_MAX",
]

DEFAULT_U_MAX = 10**7

_INT64_SAFE = 2**62


@dataclass(frozen=True)
class PellSolution:
    D: int
    t: int
    u: int
    sign: int  # +4 or -4

    @property
    def epsilon0(self) -> QuadExt:
        return QuadExt(Fraction(self.t, 2), Fraction(self.u, 2), self.D)

    def check(self) -> None:
        if self.t * self.t - self.D * self.u * self.u != self.sign:
            raise InvariantViolation(f"{self} does not satisfy its Pell equation")
        if self.t <= 0 or self.u <= 0:
            raise InvariantViolation(f"{self}: expected t > 0 and u > 0")
        if (self.t - self.D * self.u) % 2:
            raise InvariantViolation(f"{self}: not in the order of discriminant {self.D}")
        if not self.epsilon0 > 1:
            raise InvariantViolation(f"{self}: epsilon0 must exceed 1")


def check_discriminant(D: int) -> None:
    if D <= 0 or is_square(D):
        raise InvalidDiscriminant(f"discriminant must be positive and non-square, got {D}")
    if D % 4 not in (0, 1):
        raise NotADiscriminant(f"{D} is 2 or 3 mod 4, not a quadratic discriminant")


def solve_pell4(D: int) -> PellSolution:
    """Minimal solution of ``t^2 - D u^2 = +-4`` with ``(t + u sqrt D)/2 > 1``.

    Scans convergents ``p/q`` of ``w = (s + sqrt(D))/2``. A unit
    ``x + y*w`` has a conjugate of size ``1/eps``, so ``x/y`` is close to
    ``w - s`` and ``(p - s*q)/q`` runs through the candidates in increasing
    size; the first with norm ``+-1`` is the fundamental unit.
    """
    check_discriminant(D)
    s = D % 2
    for p, q in convergents(a for a, _ in surd_quotients(s, 2, D)):
        t, u = 2 * p - s * q, q
        n = t * t - D * u * u
        if n in (4, -4) and t > 0:
            sol = PellSolution(D, t, u, n)
            sol.check()
            return sol
    raise AssertionError("unreachable")


def brute_force_units(D: int, u_max: int, u_min: int = 1):
    """Every ``(t, u, sign)`` with ``u_min <= u <= u_max``, ``t > 0``, in order of u."""
    check_discriminant(D)
    for u in range(u_min, u_max + 1):
        Du2 = D * u * u
        for sign in (-4, 4):
            n = Du2 + sign
            if n > 0:
                t = isqrt(n)
                if t * t == n:
                    yield t, u, sign


def _square_hits(n: np.ndarray) -> np.ndarray:
    r = np.floor(np.sqrt(n.astype(np.float64))).astype(np.int64)
    hit = np.zeros(n.shape, dtype=bool)
    # float sqrt is within one of isqrt at this magnitude
    for c in (r - 1, r, r + 1):
        hit |= (c >= 0) & (c * c == n)
    return hit


def _first_hit_numpy(D: int, u_max: int) -> int | None:
    """Smallest ``u <= u_max`` with ``D u^2 +- 4`` a perfect square, or None."""
    lo, chunk = 1, 1 << 12
    while lo <= u_max:
        hi = min(u_max, lo + chunk - 1)
        u = np.arange(lo, hi + 1, dtype=np.int64)
        Du2 = D * u * u
        hit = _square_hits(Du2 - 4) | _square_hits(Du2 + 4)
        idx = np.flatnonzero(hit)
        if idx.size:
            return int(u[idx[0]])
        lo, chunk = hi + 1, min(chunk * 2, 1 << 20)
    return None


def brute_force_pell4(D: int, u_max: int = DEFAULT_U_MAX) -> PellSolution | None:
    """Independent oracle: smallest unit found by scanning ``u = 1..u_max``.

    Only the first ``u`` carrying a solution matters: for ``D >= 5`` and
    ``u >= 2`` every unit with coefficient ``u`` is larger than every unit
    with coefficient ``u - 1``, so nothing smaller can appear later.
    The scan is vectorized while ``D*u_max^2`` fits in int64; the final
    candidate is always re-verified with Python integers.
    """
    check_discriminant(D)
    if u_max < 1:
        raise ValueError("u_max must be >= 1")
    if D * (u_max + 1) ** 2 + 8 < _INT64_SAFE:
        u0 = _first_hit_numpy(D, u_max)
        if u0 is None:
            return None
        scan = brute_force_units(D, u0, u_min=u0)
    else:
        scan = brute_force_units(D, u_max)
    best = None
    for t, u, sign in scan:
        if best is not None and u > best.u:
            break
        cand = PellSolution(D, t, u, sign)
        if best is None or cand.epsilon0 < best.epsilon0:
            best = cand
    return best


def unit_power(s: PellSolution, n: int) -> QuadExt:
    return s.epsilon0**n


@lru_cache(maxsize=None)
def fundamental_unit(D: int) -> QuadExt:
    return solve_pell4(D).epsilon0

"""Continued fractions of quadratic surds and the negative Pell equations
x^2 - N y^2 = -1 and x^2 - d y^2 = -4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from fibperfect.arith_core import is_square
from fibperfect.errors import DomainError

__all__ = [
    "PellSolution",
    "SqrtContinuedFraction",
    "convergents",
    "lemma4_pattern",
    "lemma4_pattern_check",
    "neg4_scan",
    "neg4_solvable",
    "neg4_to_neg1",
    "neg_pell_fundamental",
    "neg_pell_solvable",
    "period_length",
    "sqrt_cf",
]


@dataclass(frozen=True)
class SqrtContinuedFraction:
    N: int
    a0: int
    period: tuple[int, ...]

    @property
    def period_length(self) -> int:
        return len(self.period)

    def terms(self) -> Iterator[int]:
        """a0, a1, a2, ... without end."""
        yield self.a0
        while True:
            yield from self.period

    def to_dict(self) -> dict:
        return {
            "N": str(self.N),
            "a0": str(self.a0),
            "period": [str(a) for a in self.period],
            "period_length": len(self.period),
        }


@dataclass(frozen=True)
class PellSolution:
    N: int
    c: int
    x: int
    y: int

    def __post_init__(self):
        if self.y < 1 or self.x * self.x - self.N * self.y * self.y != self.c:
            raise DomainError(
                f"({self.x}, {self.y}) does not solve x^2 - {self.N} y^2 = {self.c}"
            )

    def to_dict(self) -> dict:
        return {"N": str(self.N), "c": self.c, "x": str(self.x), "y": str(self.y)}


def _check_surd(N: int) -> int:
    if N < 2:
        raise DomainError(f"N must be >= 2, got {N}")
    r = math.isqrt(N)
    if r * r == N:
        raise DomainError(f"{N} is a perfect square")
    return r


def sqrt_cf(N: int) -> SqrtContinuedFraction:
    """Periodic continued fraction of sqrt(N) for non-square ``N >= 2``.

    Uses the surd recurrence on (P, Q) with
    ``a = (a0 + P) // Q``; the block ends at the first ``a == 2 a0``, which
    is exactly where (P, Q) returns to its first post-initial state.
    """
    a0 = _check_surd(N)
    P, Q = 0, 1
    a = a0
    period = []
    while True:
        P = a * Q - P
        Q = (N - P * P) // Q
        a = (a0 + P) // Q
        period.append(a)
        if Q == 1:
            break
    if period[-1] != 2 * a0:  # structural invariant of sqrt expansions
        raise AssertionError(f"period of sqrt({N}) does not end in 2*a0")
    return SqrtContinuedFraction(N, a0, tuple(period))


def period_length(N: int) -> int:
    return len(sqrt_cf(N).period)


def convergents(cf: SqrtContinuedFraction, count: int) -> list[tuple[int, int]]:
    """The first ``count`` convergents ``(p_i, q_i)`` of sqrt(N)."""
    out = []
    p_prev, p = 1, cf.a0
    q_prev, q = 0, 1
    terms = cf.terms()
    next(terms)
    for _ in range(count):
        out.append((p, q))
        a = next(terms)
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
    return out


def neg_pell_solvable(N: int) -> bool:
    """x^2 - N y^2 = -1 is solvable iff the period of sqrt(N) is odd."""
    return period_length(N) % 2 == 1


def neg_pell_fundamental(N: int) -> PellSolution:
    """Least positive solution of x^2 - N y^2 = -1.

    It is the convergent just before the end of the first period.
    """
    cf = sqrt_cf(N)
    l = len(cf.period)
    if l % 2 == 0:
        raise DomainError(f"x^2 - {N} y^2 = -1 has no solution (period {l} is even)")
    x, y = convergents(cf, l)[-1]
    return PellSolution(N, -1, x, y)


def neg4_to_neg1(d: int, s: PellSolution) -> PellSolution:
    """Map a solution of x^2 - d y^2 = -4 (d odd) to one of u^2 - d v^2 = -1
    via u = x (x^2 + 3) / 2, v = (x^2 + 1) y / 2."""
    if d % 2 == 0:
        raise DomainError(f"d must be odd, got {d}")
    if s.N != d or s.c != -4:
        raise DomainError("expected a solution of x^2 - d y^2 = -4 for this d")
    x, y = s.x, s.y
    if x % 2 == 0 or y % 2 == 0:
        # for odd d, an even x forces even y and the halves are not the map's domain
        raise DomainError(f"x and y must both be odd, got ({x}, {y})")
    u = x * (x * x + 3) // 2
    v = (x * x + 1) * y // 2
    return PellSolution(d, -1, u, v)


def _check_neg4_d(d: int) -> None:
    if d < 3 or d % 2 == 0:
        raise DomainError(f"d must be odd and >= 3, got {d}")
    if is_square(d):
        raise DomainError(f"{d} is a perfect square")


def neg4_solvable(d: int) -> bool:
    """Whether x^2 - d y^2 = -4 has integer solutions (odd non-square d).

    For odd d this is equivalent to solvability of the -1 equation.
    """
    _check_neg4_d(d)
    return neg_pell_solvable(d)


def neg4_scan(d: int, y_limit: int) -> PellSolution | None:
    """Brute force: the solution of x^2 - d y^2 = -4 with least y <= y_limit."""
    _check_neg4_d(d)
    for y in range(1, y_limit + 1):
        t = d * y * y - 4
        if t >= 0 and is_square(t):
            return PellSolution(d, -4, math.isqrt(t), y)
    return None


def lemma4_pattern(k: int) -> tuple[int, tuple[int, ...]]:
    """Predicted expansion of sqrt(k^2 - 4) for odd k >= 5."""
    if k < 5 or k % 2 == 0:
        raise DomainError(f"k must be odd and >= 5, got {k}")
    h = (k - 3) // 2
    return k - 1, (1, h, 2, h, 1, 2 * k - 2)


def lemma4_pattern_check(k: int) -> bool:
    a0, period = lemma4_pattern(k)
    cf = sqrt_cf(k * k - 4)
    return cf.a0 == a0 and cf.period == period

"""The equation 1 + x^2 + y^2 = k x y in positive integers."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from fibperfect.arith_core import fib
from fibperfect.contfrac_pell import lemma4_pattern_check, neg4_solvable, period_length
from fibperfect.errors import DomainError

__all__ = [
    "MarkovPair",
    "NoSolutionReport",
    "brute_solutions",
    "k3_pairs",
    "parity_obstruction",
    "verify_no_solutions",
    "vieta_chain",
    "vieta_next",
]


@dataclass(frozen=True, order=True)
class MarkovPair:
    k: int
    x: int
    y: int

    def __post_init__(self):
        if not 1 <= self.x <= self.y:
            raise DomainError(f"need 1 <= x <= y, got ({self.x}, {self.y})")
        if 1 + self.x * self.x + self.y * self.y != self.k * self.x * self.y:
            raise DomainError(
                f"({self.x}, {self.y}) does not solve 1 + x^2 + y^2 = {self.k} x y"
            )

    def to_dict(self) -> dict:
        return {"k": self.k, "x": str(self.x), "y": str(self.y)}


def k3_pairs(count: int) -> list[MarkovPair]:
    """``(F_{2j-1}, F_{2j+1})`` for j = 1..count."""
    return [MarkovPair(3, fib(2 * j - 1), fib(2 * j + 1)) for j in range(1, count + 1)]


def vieta_next(p: MarkovPair) -> MarkovPair:
    """Replace x by the other root of the quadratic in x, then swap."""
    return MarkovPair(p.k, p.y, p.k * p.y - p.x)


def vieta_chain(k: int, root: tuple[int, int], bound: int) -> list[MarkovPair]:
    """Vieta iterates from ``root`` while y stays ``<= bound``."""
    out = []
    p = MarkovPair(k, *root)
    while p.y <= bound:
        out.append(p)
        p = vieta_next(p)
    return out


def brute_solutions(k: int, bound: int) -> list[MarkovPair]:
    """Every solution with 1 <= x <= y <= bound, sorted by x.

    For each x the quadratic y^2 - kxy + (1 + x^2) = 0 is solved exactly
    through its discriminant.
    """
    if bound < 1:
        raise DomainError(f"bound must be >= 1, got {bound}")
    out = []
    for x in range(1, bound + 1):
        disc = (k * k - 4) * x * x - 4
        if disc < 0:
            continue
        s = math.isqrt(disc)
        if s * s != disc:
            continue
        for num in {k * x - s, k * x + s}:
            if num % 2 == 0 and x <= num // 2 <= bound:
                out.append(MarkovPair(k, x, num // 2))
    out.sort()
    return out


def parity_obstruction(k: int) -> bool:
    """True when 1 + x^2 + y^2 = kxy has no solution modulo 4.

    The check enumerates all residues of x and y mod 4, which settles every
    integer pair at once.
    """
    return not any(
        (1 + x * x + y * y - k * x * y) % 4 == 0 for x in range(4) for y in range(4)
    )


@dataclass(frozen=True)
class NoSolutionReport:
    k: int
    bound: int
    brute_empty: bool
    status: str  # "certified-empty" | "empty-up-to-bound" | "solutions-found"
    reason: str | None = None  # "am-gm" | "parity" | "period"
    details: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.status == "certified-empty"

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "bound": str(self.bound),
            "brute_empty": self.brute_empty,
            "status": self.status,
            "reason": self.reason,
            "details": self.details,
        }


def verify_no_solutions(k: int, bound: int) -> NoSolutionReport:
    """Show 1 + x^2 + y^2 = kxy is unsolvable for ``k != 3``.

    Runs the brute-force scan up to ``bound`` and attaches an argument that
    covers all pairs: k <= 2 fails since 1 + x^2 + y^2 > 2xy; even k fails
    modulo 4; odd k >= 5 would need x^2 - (k^2 - 4) y^2 = -4 to be solvable,
    which is ruled out by the even period of sqrt(k^2 - 4).
    """
    if k == 3:
        raise DomainError("k = 3 has infinitely many solutions")
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    found = brute_solutions(k, bound)
    brute_empty = not found
    details: dict = {}
    reason = None
    if k <= 2:
        reason = "am-gm"
    elif k % 2 == 0:
        if parity_obstruction(k):
            reason = "parity"
        details["modulus"] = 4
    else:
        d = k * k - 4
        l = period_length(d)
        details.update(
            d=str(d),
            period_length=l,
            pattern_ok=lemma4_pattern_check(k),
            neg4_solvable=neg4_solvable(d),
        )
        if l % 2 == 0 and not details["neg4_solvable"]:
            reason = "period"
    if not brute_empty:
        status = "solutions-found"
        details["solutions"] = [p.to_dict() for p in found]
    elif reason is not None:
        status = "certified-empty"
    else:
        status = "empty-up-to-bound"
    return NoSolutionReport(k, bound, brute_empty, status, reason, details)

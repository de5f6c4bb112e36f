"""F-perfect numbers and the equations sigma_a(n) - n^a = b n.

An F-perfect number is an ``n`` whose proper divisors have squares summing to
``3n``. They are exactly the products ``F_{2k-1} F_{2k+1}`` of two Fibonacci
primes, and :func:`generate_certificates` builds them from that shape.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from fibperfect.arith_core import (
    DEFAULT_MR_ROUNDS,
    Factorization,
    PrimalityResult,
    factorize,
    fib,
    is_fibonacci,
    is_prime,
    proper_power_sum,
    sigma_from_factors,
)
from fibperfect.errors import DomainError
from fibperfect.sieve import power_sum_fits, power_sum_list, power_sum_table, primes_up_to

__all__ = [
    "DIRECT_CHECK_CAP",
    "FPerfectCertificate",
    "SolutionRecord",
    "Theorem1Bound",
    "certificate_for",
    "corollary1_b_values",
    "eq2_cutoff",
    "fibonacci_prime_shape",
    "generate_certificates",
    "is_f_perfect",
    "proper_square_table",
    "search_eq1",
    "search_eq2",
    "theorem1_bound",
]

DIRECT_CHECK_CAP = 10**18


@dataclass(frozen=True)
class SolutionRecord:
    a: int
    b: int
    n: int
    factorization: Factorization

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "n": str(self.n),
            "factorization": self.factorization.to_dict()["factors"],
        }


def is_f_perfect(n: int) -> bool:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return proper_power_sum(2, n) == 3 * n


@lru_cache(maxsize=2)
def proper_square_table(limit: int) -> np.ndarray:
    """``sigma_2(n) - n^2`` for 0 <= n <= limit (int64, read-only)."""
    n = np.arange(limit + 1, dtype=np.int64)
    table = power_sum_table(2, limit) - n * n
    table.setflags(write=False)
    return table


def _records(a: int, b: int, ns) -> list[SolutionRecord]:
    return [SolutionRecord(a, b, int(n), factorize(int(n))) for n in ns]


def search_eq1(b: int, limit: int) -> list[SolutionRecord]:
    """All ``n <= limit`` with sigma_2(n) - n^2 = b n, ascending."""
    if b < 1:
        raise DomainError(f"b must be positive, got {b}")
    if limit < 1:
        return []
    table = proper_square_table(limit)
    n = np.arange(limit + 1, dtype=np.int64)
    hits = np.flatnonzero(table == b * n)
    return _records(2, b, hits[hits >= 1])


@dataclass(frozen=True)
class Theorem1Bound:
    """Where solutions of sigma_2(n) - n^2 = b n can live, branch by branch.

    Branches follow the number of distinct primes of ``n`` and the exponents
    ``n = p1^e1 p2^e2`` (p1 < p2) in the two-prime case:

    * one prime: never a solution;
    * three or more primes: ``n <= b^3 / 27`` (``three_prime_cutoff``);
    * two primes, not squarefree: ``2 p1^(e1-1) p2^(e2-1) <= b``, which pins
      ``n`` below ``two_prime_mixed_cutoff``;
    * two primes, squarefree: ``1 + p1^2 + p2^2 = b p1 p2``, empty unless
      ``b == 3``.

    ``certified_cutoff`` is the overall bound when every branch is finite
    (``b != 3``), otherwise ``None``.
    """

    b: int
    three_prime_cutoff: int
    two_prime_cap: int
    two_prime_mixed_cutoff: int
    squarefree_branch: str

    @property
    def certified_cutoff(self) -> int | None:
        if self.squarefree_branch != "empty":
            return None
        return max(self.three_prime_cutoff, self.two_prime_mixed_cutoff)

    def to_dict(self) -> dict:
        cutoff = self.certified_cutoff
        return {
            "b": self.b,
            "three_prime_cutoff": str(self.three_prime_cutoff),
            "two_prime_cap": str(self.two_prime_cap),
            "two_prime_mixed_cutoff": str(self.two_prime_mixed_cutoff),
            "squarefree_branch": self.squarefree_branch,
            "certified_cutoff": None if cutoff is None else str(cutoff),
        }


def _mixed_two_prime_cutoff(b: int) -> int:
    cap = b // 2  # p1^(e1-1) p2^(e2-1) <= b/2
    if cap < 2:
        return 0
    best = 0
    primes = [int(p) for p in primes_up_to(cap)]
    # e2 >= 2: p2^(e2-1) <= cap, so p1 < p2 <= cap
    for j, p2 in enumerate(primes):
        q2 = p2  # p2^(e2-1)
        while q2 <= cap:
            for p1 in primes[:j]:
                q1 = 1  # p1^(e1-1)
                while q1 * q2 <= cap:
                    best = max(best, q1 * p1 * q2 * p2)
                    q1 *= p1
            q2 *= p2
    # e2 == 1, e1 >= 2: B p2^2 - b p1^e1 p2 + A = 0 with
    # A = sigma_2(p1^e1), B = sigma_2(p1^(e1-1)), so p2 <= b p1^e1 / B
    for p1 in primes:
        e1 = 2
        while p1 ** (e1 - 1) <= cap:
            pe = p1**e1
            best = max(best, pe * (b * pe // _sigma_sq(p1, e1 - 1)))
            e1 += 1
    return best


def theorem1_bound(b: int) -> Theorem1Bound:
    if b < 1:
        raise DomainError(f"b must be positive, got {b}")
    return Theorem1Bound(
        b=b,
        three_prime_cutoff=b**3 // 27,
        two_prime_cap=b // 2,
        two_prime_mixed_cutoff=_mixed_two_prime_cutoff(b),
        squarefree_branch="fibonacci-pairs" if b == 3 else "empty",
    )


def eq2_cutoff(b: int) -> int:
    """Every solution of sigma_a(n) - n^a = b n with a >= 3 has n <= b^2 / 4."""
    return b * b // 4


def _exact_power_sums(a: int, limit: int):
    if power_sum_fits(a, limit):
        return power_sum_table(a, limit).tolist()
    return power_sum_list(a, limit)


def search_eq2(a: int, b: int, limit: int) -> list[SolutionRecord]:
    """All solutions ``n <= limit`` of sigma_a(n) - n^a = b n for a >= 3.

    Only ``n <= b^2/4`` is scanned; beyond that there are no solutions, so
    the result is complete whenever ``limit >= eq2_cutoff(b)``.
    """
    if a < 3:
        raise DomainError(f"a must be >= 3, got {a}")
    if b < 1:
        raise DomainError(f"b must be positive, got {b}")
    top = min(limit, eq2_cutoff(b))
    if top < 1:
        return []
    sums = _exact_power_sums(a, top)
    hits = [n for n in range(1, top + 1) if sums[n] - n**a == b * n]
    return _records(a, b, hits)


def corollary1_b_values(a: int, n_limit: int) -> list[tuple[int, int]]:
    """Values ``b >= 1`` reached as (sigma_a(n) - n^a) / n for n <= n_limit.

    Returns ``(b, smallest witness n)`` sorted by b.
    """
    if a < 2:
        raise DomainError(f"a must be >= 2, got {a}")
    if n_limit < 1:
        return []
    sums = _exact_power_sums(a, n_limit)
    seen: dict[int, int] = {}
    for n in range(2, n_limit + 1):
        q, r = divmod(sums[n] - n**a, n)
        if r == 0 and q >= 1 and q not in seen:
            seen[q] = n
    return sorted(seen.items())


def fibonacci_prime_shape(n: int) -> tuple[int, int] | None:
    """Fibonacci indices ``(2k-1, 2k+1)`` when ``n = F_{2k-1} F_{2k+1}`` with
    both factors prime, else ``None``."""
    if n < 2:
        return None
    fz = factorize(n)
    if fz.distinct_prime_count != 2 or fz.total_prime_count != 2:
        return None
    lo, hi = fz.primes
    i, j = is_fibonacci(lo), is_fibonacci(hi)
    if i is None or j is None or i % 2 == 0 or j != i + 2:
        return None
    if not (is_prime(lo) and is_prime(hi)):
        return None
    return i, j


@dataclass(frozen=True)
class FPerfectCertificate:
    n: int
    k: int
    f_lo: int
    f_hi: int
    lo_primality: PrimalityResult
    hi_primality: PrimalityResult
    sigma_check: str  # "direct" or "identity"

    @property
    def digits(self) -> int:
        return len(str(self.n))

    def to_dict(self) -> dict:
        return {
            "n": str(self.n),
            "k": self.k,
            "indices": [2 * self.k - 1, 2 * self.k + 1],
            "f_lo": str(self.f_lo),
            "f_hi": str(self.f_hi),
            "digits": self.digits,
            "lo_primality": self.lo_primality.to_dict(),
            "hi_primality": self.hi_primality.to_dict(),
            "sigma_check": self.sigma_check,
        }


def _task_seed(seed: int, index: int) -> int:
    return (seed * 0x9E3779B97F4A7C15 + index) % (1 << 64)


def certificate_for(k: int, rounds: int = DEFAULT_MR_ROUNDS, seed: int = 0) -> FPerfectCertificate | None:
    """Certificate for ``n = F_{2k-1} F_{2k+1}``, or ``None`` if either
    factor is composite."""
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    lo, hi = fib(2 * k - 1), fib(2 * k + 1)
    lo_v = is_prime(lo, rounds, _task_seed(seed, 2 * k - 1))
    if lo_v.is_composite:
        return None
    hi_v = is_prime(hi, rounds, _task_seed(seed, 2 * k + 1))
    if hi_v.is_composite:
        return None
    n = lo * hi
    if 1 + lo * lo + hi * hi != 3 * lo * hi:
        raise AssertionError(f"Fibonacci pair at k={k} fails 1 + x^2 + y^2 = 3xy")
    check = "identity"
    if n < DIRECT_CHECK_CAP:
        if proper_power_sum(2, n) != 3 * n:
            raise AssertionError(f"F_{2*k-1} F_{2*k+1} = {n} is not F-perfect")
        check = "direct"
    return FPerfectCertificate(n, k, lo, hi, lo_v, hi_v, check)


def _certificate_batch(args: tuple[list[int], int, int]) -> list[FPerfectCertificate | None]:
    ks, rounds, seed = args
    return [certificate_for(k, rounds, seed) for k in ks]


def generate_certificates(
    max_k: int,
    rounds: int = DEFAULT_MR_ROUNDS,
    seed: int = 0,
    workers: int = 1,
) -> list[FPerfectCertificate]:
    """Certificates for every k <= max_k where both F_{2k-1} and F_{2k+1}
    are (probable) primes, in increasing k.

    Each k gets its own seed, so the output does not depend on ``workers``.
    """
    ks = list(range(1, max_k + 1))
    if workers <= 1 or len(ks) < 2:
        found = _certificate_batch((ks, rounds, seed))
    else:
        # interleave so every worker gets a mix of small and large k
        batches = [(ks[i::workers], rounds, seed) for i in range(workers)]
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_certificate_batch, batches))
        found = [c for part in parts for c in part]
    return sorted((c for c in found if c is not None), key=lambda c: c.k)


def _sigma_sq(p: int, e: int) -> int:
    return sigma_from_factors(2, ((p, e),))

"""Vectorized tables for range scans (numpy, int64)."""

from __future__ import annotations

import math

import numpy as np

from fibperfect.arith_core import sigma_from_factors
from fibperfect.errors import DomainError

# sigma_a(n) < zeta(a) * n**a <= 1.645 * n**a for a >= 2
_INT64_HEADROOM = 1 << 62


def prime_flags(limit: int) -> np.ndarray:
    """Boolean array ``f`` of length ``limit + 1`` with ``f[i]`` iff i is prime."""
    flags = np.ones(max(limit + 1, 2), dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return flags[: limit + 1]


def primes_up_to(limit: int) -> np.ndarray:
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    return np.flatnonzero(prime_flags(limit)).astype(np.int64)


def smallest_prime_factor(limit: int) -> np.ndarray:
    """``spf[i]`` for 0 <= i <= limit, with spf[0] = spf[1] = 0."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    rest = np.flatnonzero(spf == 0)
    spf[rest] = rest
    spf[:2] = 0
    return spf


def power_sum_fits(a: int, limit: int) -> bool:
    # sigma_1(n) <= n (1 + ln n)
    slack = 2 if a >= 2 else limit.bit_length() + 1
    return slack * limit**a < _INT64_HEADROOM


def power_sum_table(a: int, limit: int) -> np.ndarray:
    """``sigma_a(n)`` for 0 <= n <= limit as int64 (entry 0 is 0).

    Divisors are added in complementary pairs ``(d, n // d)`` with
    ``d <= sqrt(n)``, so only ``sqrt(limit)`` slice updates are needed.
    """
    if a < 1:
        raise DomainError("exponent must be >= 1")
    if not power_sum_fits(a, limit):
        raise DomainError(f"sigma_{a} up to {limit} does not fit in int64")
    out = np.zeros(limit + 1, dtype=np.int64)
    for d in range(1, math.isqrt(limit) + 1):
        cof = np.arange(d, limit // d + 1, dtype=np.int64)
        out[d * d :: d] += d**a + cof**a
        out[d * d] -= d**a  # d == n // d counted twice
    return out


def power_sum_list(a: int, limit: int) -> list[int]:
    """Exact ``sigma_a(n)`` as Python ints, for tables that overflow int64."""
    spf = smallest_prime_factor(limit).tolist()
    out = [0] * (limit + 1)
    if limit >= 1:
        out[1] = 1
    for n in range(2, limit + 1):
        p, m, e = spf[n], n, 0
        while m % p == 0:
            m //= p
            e += 1
        out[n] = out[m] * sigma_from_factors(a, ((p, e),))
    return out

"""Divisibility n | sigma_3(n) for numbers with two distinct prime factors.

The range scans work on n = P * Q with P = p^a, Q = q^b, p < q. Because
sigma_3(p^a) = 1 (mod p), n divides sigma_3(P) sigma_3(Q) exactly when
P | sigma_3(Q) and Q | sigma_3(P); both congruences are evaluated over numpy
arrays of q, and every hit is re-checked with exact integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from fibperfect.arith_core import Factorization, factorize, is_prime, sigma, sigma_from_factors
from fibperfect.errors import DomainError
from fibperfect.sieve import primes_up_to

__all__ = [
    "ConjectureReport",
    "Sigma3Verdict",
    "classify_sigma3",
    "conjecture_scan",
    "even_perfect_numbers",
    "is_even_perfect",
    "lemma6_solutions",
    "lemma7_search",
    "lemma8_search",
    "scan_semiprimes",
    "scan_two_power_times_prime",
]

Shape = Literal["semiprime-distinct", "two-power-times-prime", "other"]
Classification = Literal[
    "even-perfect", "the-exception-28", "the-solution-6", "non-dividing", "other-dividing"
]

# int64 safety for the vectorized congruences: moduli stay below 2**31
_MAX_SCAN = 1 << 31


def is_even_perfect(n: int) -> bool:
    """n = 2^(p-1) (2^p - 1) with 2^p - 1 prime (p is then prime too)."""
    if n < 6 or n % 2:
        return False
    v = (n & -n).bit_length() - 1
    m = n >> v
    return m == (1 << (v + 1)) - 1 and bool(is_prime(v + 1)) and bool(is_prime(m))


def even_perfect_numbers(limit: int) -> list[int]:
    out = []
    p = 2
    while (1 << (p - 1)) * ((1 << p) - 1) <= limit:
        if is_prime(p) and is_prime((1 << p) - 1):
            out.append((1 << (p - 1)) * ((1 << p) - 1))
        p += 1
    return out


def _shape(fz: Factorization) -> Shape:
    if fz.distinct_prime_count == 2 and fz.total_prime_count == 2:
        return "semiprime-distinct"
    if fz.distinct_prime_count == 2 and fz.factors[0][0] == 2 and fz.factors[1][1] == 1:
        return "two-power-times-prime"
    return "other"


@dataclass(frozen=True)
class Sigma3Verdict:
    n: int
    divisible: bool
    shape: Shape
    classification: Classification

    def to_dict(self) -> dict:
        return {
            "n": str(self.n),
            "divisible": self.divisible,
            "shape": self.shape,
            "classification": self.classification,
        }


def classify_sigma3(n: int) -> Sigma3Verdict:
    """Whether n | sigma_3(n), plus the shape of n and its place in the
    classification of two-prime solutions."""
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    fz = factorize(n)
    divisible = sigma_from_factors(3, fz.factors) % n == 0
    if n == 28:
        cls: Classification = "the-exception-28"
    elif is_even_perfect(n):
        cls = "even-perfect"
    elif divisible:
        cls = "other-dividing"
    else:
        cls = "non-dividing"
    return Sigma3Verdict(n, divisible, _shape(fz), cls)


def _mod_big(value: int, moduli: np.ndarray) -> np.ndarray:
    """``value % moduli`` elementwise for a Python int of any size."""
    r = np.zeros_like(moduli)
    nbytes = max(1, (value.bit_length() + 15) // 16 * 2)
    digits = value.to_bytes(nbytes, "big")
    for i in range(0, nbytes, 2):
        r = (r * 65536 + (digits[i] << 8 | digits[i + 1])) % moduli
    return r


def _sigma3_power_mod(qs: np.ndarray, b: int, P: int) -> np.ndarray:
    """sigma_3(q^b) mod P elementwise."""
    t = qs % P
    c = t * t % P * t % P
    acc = np.ones_like(qs) % P
    pw = np.ones_like(qs)
    for _ in range(b):
        pw = pw * c % P
        acc = (acc + pw) % P
    return acc


def _integer_root(x: int, b: int) -> int:
    r = int(round(x ** (1.0 / b)))
    while r**b > x:
        r -= 1
    while (r + 1) ** b <= x:
        r += 1
    return r


def _two_prime_power_hits(
    limit: int,
    primes: np.ndarray,
    p_values,
    max_a: int | None,
    max_b: int | None,
) -> list[int]:
    """n = p^a q^b <= limit, p < q primes, n | sigma_3(n), p drawn from p_values."""
    hits = []
    for p in p_values:
        p = int(p)
        a = 1
        while max_a is None or a <= max_a:
            P = p**a
            if P * (p + 1) > limit:
                break
            S = sigma_from_factors(3, ((p, a),))
            b = 1
            while max_b is None or b <= max_b:
                room = limit // P
                qmax = _integer_root(room, b)
                if qmax <= p:
                    break
                lo = np.searchsorted(primes, p, side="right")
                hi = np.searchsorted(primes, qmax, side="right")
                qs = primes[lo:hi]
                Qs = qs**b
                ok = (_mod_big(S, Qs) == 0) & (_sigma3_power_mod(qs, b, P) == 0)
                for Q in Qs[ok].tolist():
                    n = P * Q
                    if sigma(3, n) % n:  # exact recheck
                        raise AssertionError(f"vectorized congruence disagrees at n={n}")
                    hits.append(n)
                b += 1
            a += 1
    return sorted(hits)


def _check_limit(limit: int) -> None:
    if limit >= _MAX_SCAN:
        raise DomainError(f"scan limit must be below {_MAX_SCAN}")


def scan_semiprimes(limit: int) -> list[int]:
    """All n = pq <= limit with primes p < q and n | sigma_3(n)."""
    _check_limit(limit)
    if limit < 6:
        return []
    primes = primes_up_to(limit // 2)
    small = primes[primes <= math.isqrt(limit)]
    return _two_prime_power_hits(limit, primes, small, max_a=1, max_b=1)


def scan_two_power_times_prime(limit: int) -> list[Sigma3Verdict]:
    """All n = 2^a p <= limit (a >= 1, p odd prime) with n | sigma_3(n)."""
    _check_limit(limit)
    if limit < 6:
        return []
    primes = primes_up_to(limit // 2)
    hits = _two_prime_power_hits(limit, primes, [2], max_a=None, max_b=1)
    return [classify_sigma3(n) for n in hits]


@dataclass(frozen=True)
class ConjectureReport:
    limit: int
    count: str  # "distinct" or "multiplicity"
    counterexamples: list[dict] = field(default_factory=list)
    dividing: list[int] = field(default_factory=list)
    perfect_checked: list[tuple[int, bool]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "limit": str(self.limit),
            "count": self.count,
            "counterexamples": self.counterexamples,
            "dividing": [str(n) for n in self.dividing],
            "perfect_checked": [
                {"n": str(n), "divisible": d, "excluded": n == 28}
                for n, d in self.perfect_checked
            ],
        }


def conjecture_scan(limit: int, count: str = "distinct") -> ConjectureReport:
    """Look for counterexamples to: two prime factors and n | sigma_3(n)
    exactly when n is an even perfect number other than 28.

    ``count="distinct"`` takes "two prime factors" as two distinct primes,
    ``count="multiplicity"`` as Omega(n) = 2. Counterexamples are returned
    as data, the scan never asserts the statement.
    """
    _check_limit(limit)
    if count not in ("distinct", "multiplicity"):
        raise DomainError(f"count must be 'distinct' or 'multiplicity', got {count!r}")
    if count == "distinct":
        primes = primes_up_to(max(limit // 2, 2))
        small = primes[primes <= math.isqrt(limit)]
        dividing = _two_prime_power_hits(limit, primes, small, max_a=None, max_b=None)
    else:
        dividing = scan_semiprimes(limit)
        # p^2 never divides 1 + p^3 + p^6, checked rather than assumed
        for p in primes_up_to(math.isqrt(limit)).tolist():
            if sigma(3, p * p) % (p * p) == 0:
                dividing.append(p * p)
        dividing.sort()

    counterexamples = [
        {"n": str(n), "reason": "divides but is not an even perfect number"}
        for n in dividing
        if not is_even_perfect(n) or n == 28
    ]
    checked = []
    for n in even_perfect_numbers(limit):
        divisible = sigma(3, n) % n == 0
        checked.append((n, divisible))
        if n != 28 and not divisible:
            counterexamples.append({"n": str(n), "reason": "even perfect but does not divide"})
    return ConjectureReport(limit, count, counterexamples, dividing, checked)


def lemma6_solutions(limit: int) -> list[tuple[int, int]]:
    """Prime pairs p < q <= limit with p | q + 1 and q | p + 1."""
    primes = primes_up_to(limit)
    out = []
    for i, p in enumerate(primes.tolist()):
        qs = primes[i + 1 :]
        ok = ((qs + 1) % p == 0) & ((p + 1) % qs == 0)
        out.extend((p, q) for q in qs[ok].tolist())
    return out


def lemma7_search(x_limit: int, y_limit: int) -> list[tuple[int, int, int]]:
    """All (x, y, quotient) with 1 <= x <= x_limit, 2 <= y <= y_limit and
    xy - 1 dividing x^2 - x + 1."""
    if y_limit < 2:
        raise DomainError(f"y_limit must be >= 2, got {y_limit}")
    ys = np.arange(2, y_limit + 1, dtype=np.int64)
    out = []
    for x in range(1, x_limit + 1):
        num = x * x - x + 1
        den = x * ys - 1
        for y, d in zip(ys[num % den == 0].tolist(), den[num % den == 0].tolist()):
            out.append((x, y, num // d))
    return out


def lemma8_search(limit: int) -> list[tuple[int, int]]:
    """All 1 <= y <= x <= limit with x | y^2 - y + 1 and y | x^2 - x + 1."""
    out = []
    for x in range(1, limit + 1):
        ys = np.arange(1, x + 1, dtype=np.int64)
        ok = ((ys * ys - ys + 1) % x == 0) & ((x * x - x + 1) % ys == 0)
        out.extend((x, y) for y in ys[ok].tolist())
    return out

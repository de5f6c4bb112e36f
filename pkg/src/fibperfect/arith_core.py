"""Exact integer arithmetic: primality, factorization, divisor-power sums,
Fibonacci and Lucas numbers.

Everything here works on plain Python ``int`` values, so there is no width
limit anywhere. Randomized pieces (probabilistic primality rounds above
2**64, Pollard rho) draw from a ``random.Random`` built from an explicit
seed, never from module-level state.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import cache
from typing import Literal

from fibperfect.errors import DomainError, FactorizationBudgetExceeded

__all__ = [
    "DEFAULT_MR_ROUNDS",
    "DEFAULT_TRIAL_BOUND",
    "DETERMINISTIC_LIMIT",
    "Factorization",
    "PrimalityResult",
    "factorize",
    "fib",
    "fib_pair",
    "is_fibonacci",
    "is_prime",
    "is_square",
    "lucas",
    "proper_power_sum",
    "sigma",
    "sigma_from_factors",
    "small_primes",
]

DETERMINISTIC_LIMIT = 1 << 64
DEFAULT_MR_ROUNDS = 40
DEFAULT_TRIAL_BOUND = 10**6
DEFAULT_RHO_BUDGET = 2_000_000

# Strong-pseudoprime bases that are deterministic for n < 3.3e24 > 2**64.
_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_QUICK_TRIAL = 1000

Verdict = Literal["composite", "provable-prime", "probable-prime"]


@dataclass(frozen=True)
class PrimalityResult:
    verdict: Verdict
    witness_rounds: int = 0

    @property
    def is_composite(self) -> bool:
        return self.verdict == "composite"

    def __bool__(self) -> bool:
        return self.verdict != "composite"

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "witness_rounds": self.witness_rounds}


_COMPOSITE = PrimalityResult("composite")
_PROVABLE = PrimalityResult("provable-prime")


@cache
def small_primes(bound: int) -> tuple[int, ...]:
    """All primes ``<= bound`` (plain sieve of Eratosthenes)."""
    if bound < 2:
        return ()
    flags = bytearray([1]) * (bound + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(bound) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, bound + 1, p)))
    return tuple(i for i, f in enumerate(flags) if f)


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def _strong_probable_prime(n: int, base: int, d: int, s: int) -> bool:
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas_probable_prime(n: int) -> bool:
    """Strong Lucas test with Selfridge's parameter choice (method A).

    ``n`` must be odd, > 2 and not a perfect square.
    """
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4

    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    # Binary ladder for U_d, V_d, Q^d, left to right.
    U, V, Qk = 1, P, Q % n
    inv2 = (n + 1) // 2
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (P * U + V) * inv2 % n, (D * U + P * V) * inv2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        if V == 0:
            return True
        Qk = Qk * Qk % n
    return False


def is_prime(n: int, rounds: int = DEFAULT_MR_ROUNDS, seed: int = 0) -> PrimalityResult:
    """Classify ``n`` as composite, provable-prime or probable-prime.

    Below 2**64 the answer is exact: trial division by small primes and then
    the fixed strong-pseudoprime bases. Above that, ``rounds`` Miller-Rabin
    rounds with seeded random bases are combined with a strong Lucas test,
    and a pass is reported as probable-prime.
    """
    if n < 2:
        return _COMPOSITE
    for p in small_primes(_QUICK_TRIAL):
        if n % p == 0:
            return _PROVABLE if n == p else _COMPOSITE
    if n < _QUICK_TRIAL * _QUICK_TRIAL:
        return _PROVABLE

    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    if n < DETERMINISTIC_LIMIT:
        for base in _DETERMINISTIC_BASES:
            if not _strong_probable_prime(n, base, d, s):
                return _COMPOSITE
        return _PROVABLE

    if rounds < 1:
        raise DomainError("rounds must be >= 1")
    if not _strong_probable_prime(n, 2, d, s):
        return _COMPOSITE
    rng = random.Random(seed)
    for _ in range(rounds):
        if not _strong_probable_prime(n, rng.randrange(3, n - 1), d, s):
            return _COMPOSITE
    if is_square(n) or not _strong_lucas_probable_prime(n):
        return _COMPOSITE
    return PrimalityResult("probable-prime", rounds)


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    @property
    def distinct_prime_count(self) -> int:
        return len(self.factors)

    @property
    def total_prime_count(self) -> int:
        return sum(e for _, e in self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def to_dict(self) -> dict:
        return {
            "n": str(self.n),
            "factors": [[str(p), e] for p, e in self.factors],
        }


def _pollard_brent(n: int, rng: random.Random, budget: int) -> tuple[int, int]:
    """Find a nontrivial factor of composite odd ``n``.

    Returns ``(factor, steps_used)``; raises when ``budget`` steps run out.
    """
    used = 0
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            used += r
            if used > budget:
                raise FactorizationBudgetExceeded(
                    f"rho budget of {budget} steps exhausted on {n}"
                )
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g, used


def factorize(
    n: int,
    trial_bound: int = DEFAULT_TRIAL_BOUND,
    rho_budget: int = DEFAULT_RHO_BUDGET,
    seed: int = 0,
) -> Factorization:
    """Prime factorization of ``n >= 2``.

    Trial division up to ``trial_bound``, then Brent's variant of Pollard rho
    seeded from ``seed``. If the cofactor cannot be split within
    ``rho_budget`` iterations, :class:`FactorizationBudgetExceeded` is
    raised; a partial factorization is never returned.
    """
    if n < 2:
        raise DomainError(f"factorize needs n >= 2, got {n}")
    counts: dict[int, int] = {}
    m = n
    for p in small_primes(min(trial_bound, math.isqrt(n))):
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            counts[p] = e
    if m > 1:
        rng = random.Random(seed)
        budget = rho_budget
        stack = [m]
        while stack:
            c = stack.pop()
            if c == 1:
                continue
            if c <= trial_bound * trial_bound or is_prime(c, seed=seed):
                # cofactors below trial_bound**2 with no factor <= trial_bound are prime
                counts[c] = counts.get(c, 0) + 1
                continue
            f, used = _pollard_brent(c, rng, budget)
            budget -= used
            stack.extend((f, c // f))
    return Factorization(n, tuple(sorted(counts.items())))


def sigma_from_factors(a: int, factors) -> int:
    """sigma_a from a list of ``(prime, exponent)`` pairs."""
    total = 1
    for p, e in factors:
        pa = p**a
        # geometric series 1 + p^a + ... + p^(a e), exact
        total *= (pa ** (e + 1) - 1) // (pa - 1) if a else e + 1
    return total


def sigma(a: int, n: int, **factor_kw) -> int:
    """Sum of ``d**a`` over all divisors ``d`` of ``n``."""
    if a < 0:
        raise DomainError("sigma exponent must be non-negative")
    if n < 1:
        raise DomainError(f"sigma needs n >= 1, got {n}")
    if n == 1:
        return 1
    return sigma_from_factors(a, factorize(n, **factor_kw).factors)


def proper_power_sum(a: int, n: int, **factor_kw) -> int:
    """Sum of ``d**a`` over the divisors ``d < n``."""
    return sigma(a, n, **factor_kw) - n**a


def fib_pair(i: int) -> tuple[int, int]:
    """``(F_i, F_{i+1})`` by fast doubling."""
    if i < 0:
        raise DomainError("Fibonacci index must be non-negative")
    a, b = 0, 1
    for bit in bin(i)[2:]:
        c = a * (2 * b - a)
        d = a * a + b * b
        a, b = (d, c + d) if bit == "1" else (c, d)
    return a, b


def fib(i: int) -> int:
    return fib_pair(i)[0]


def lucas(i: int) -> int:
    """Lucas number with L_0 = 2, L_1 = 1."""
    f, g = fib_pair(i)
    return 2 * g - f


_LOG_PHI = math.log((1 + math.sqrt(5)) / 2)
_LOG_SQRT5 = 0.5 * math.log(5)


def is_fibonacci(x: int) -> int | None:
    """Smallest index ``i`` with ``fib(i) == x``, or ``None``.

    Membership is decided by 5x^2 + 4 or 5x^2 - 4 being a square.
    """
    if x < 1:
        raise DomainError(f"is_fibonacci needs x >= 1, got {x}")
    if not (is_square(5 * x * x + 4) or is_square(5 * x * x - 4)):
        return None
    if x == 1:
        return 1
    guess = max(2, round((math.log(x) + _LOG_SQRT5) / _LOG_PHI))
    i = max(0, guess - 3)
    f, g = fib_pair(i)
    while f < x:
        f, g = g, f + g
        i += 1
    if f != x:  # unreachable if the square test is right
        raise AssertionError(f"{x} passed the square test but is not F_i")
    return i

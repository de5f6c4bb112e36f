"""F-perfect numbers, Fibonacci primes and related Diophantine machinery."""

from fibperfect.arith_core import (
    Factorization,
    PrimalityResult,
    factorize,
    fib,
    is_fibonacci,
    is_prime,
    lucas,
    proper_power_sum,
    sigma,
)
from fibperfect.errors import DomainError, FactorizationBudgetExceeded
from fibperfect.fperfect import (
    FPerfectCertificate,
    SolutionRecord,
    generate_certificates,
    is_f_perfect,
    search_eq1,
    search_eq2,
    theorem1_bound,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "FPerfectCertificate",
    "Factorization",
    "FactorizationBudgetExceeded",
    "PrimalityResult",
    "SolutionRecord",
    "factorize",
    "fib",
    "generate_certificates",
    "is_f_perfect",
    "is_fibonacci",
    "is_prime",
    "lucas",
    "proper_power_sum",
    "search_eq1",
    "search_eq2",
    "sigma",
    "theorem1_bound",
]

class DomainError(ValueError):
    """An argument outside the mathematical domain of an operation."""


class FactorizationBudgetExceeded(RuntimeError):
    """Factorization gave up at its configured effort limit.

    Callers should skip or retry; no partial answer is ever returned.
    """

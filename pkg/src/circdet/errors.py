"""Exception types.  Each names a distinct failure a caller may want to catch."""


class CircdetError(Exception):
    pass


class NotApplicable(CircdetError, ValueError):
    """Input outside the operation's domain (wrong residue class, q = p, zero...)."""


class UnsupportedRing(NotApplicable):
    pass


class NoSplit(NotApplicable):
    """The prime does not split completely in the requested ring."""


class SearchExhausted(CircdetError):
    """A bounded search that is guaranteed to succeed did not.  Treat as a bug."""


class RepresentationNotFound(SearchExhausted):
    pass


class TableTooLarge(CircdetError):
    pass


class TypeMismatch(CircdetError):
    """A witness was requested for a prime of the wrong type."""


class NotCoprime(CircdetError, ValueError):
    pass


class FactorizationFailed(CircdetError):
    def __init__(self, n, cofactor):
        super().__init__(f"could not factor {cofactor} (from {n}) within budget")
        self.n = n
        self.cofactor = cofactor


class InfeasibleStrata(CircdetError, ValueError):
    pass


class BudgetExceeded(CircdetError):
    """Search stopped at its node budget; ``resume_token`` restarts it."""

    def __init__(self, message, resume_token):
        super().__init__(message)
        self.resume_token = resume_token

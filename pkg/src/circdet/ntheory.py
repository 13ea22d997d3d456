"""Integer helpers: primality, valuations, budgeted factorization."""

from __future__ import annotations

from functools import lru_cache

from sympy import isprime, primerange
from sympy.ntheory import pollard_pm1, pollard_rho
from sympy.ntheory.factor_ import factorint

from .errors import FactorizationFailed, NotApplicable

TRIAL_LIMIT = 10**6
DEFAULT_BUDGET = 200_000


def is_prime(n: int) -> bool:
    """Deterministic below 2^64 (BPSW has no counterexamples there)."""
    return n > 1 and isprime(n)


def require_prime(q: int) -> None:
    if not is_prime(q):
        raise NotApplicable(f"{q} is not prime")


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def primes_congruent(modulus: int, residue: int, bound: int) -> list[int]:
    """Primes q < bound with q = residue mod modulus."""
    return [q for q in primerange(2, bound) if q % modulus == residue % modulus]


def factor(n: int, budget: int = DEFAULT_BUDGET) -> dict[int, int]:
    """Prime factorization of |n|.

    Trial division to 10^6, then Pollard rho / p-1 with ``budget`` iterations
    each round.  Raises FactorizationFailed rather than returning a guess.
    """
    return dict(_factor(abs(n), budget))


@lru_cache(maxsize=65536)
def _factor(n: int, budget: int) -> tuple[tuple[int, int], ...]:
    if n == 0:
        raise ValueError("cannot factor zero")
    out = factorint(n, limit=TRIAL_LIMIT, use_rho=False, use_pm1=False, use_ecm=False)
    pending = [q for q in out if not is_prime(q)]
    for c in pending:
        e = out.pop(c)
        for q, k in _split_composite(c, n, budget).items():
            out[q] = out.get(q, 0) + k * e
    return tuple(sorted((int(q), int(k)) for q, k in out.items()))


def _split_composite(c: int, n: int, budget: int) -> dict[int, int]:
    stack, found = [int(c)], {}
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            found[m] = found.get(m, 0) + 1
            continue
        d = None
        for seed in range(2, 8):
            d = pollard_rho(m, s=seed, retries=0, max_steps=budget)
            if d:
                break
        if not d:
            d = pollard_pm1(m, B=min(budget, 10**6), seed=3, retries=2)
        if not d or d in (1, m):
            raise FactorizationFailed(n, m)
        d = int(d)
        stack.extend([d, m // d])
    return found


def prime_factors(n: int, budget: int = DEFAULT_BUDGET) -> list[int]:
    return list(factor(n, budget))

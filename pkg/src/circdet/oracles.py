"""Classical criteria that must agree with the reduction classifier.

For q = 1 mod 5 each test returns True exactly for artiads; for q = 1 mod 3
the binary-form and cubic-residue tests return True exactly for Type 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from sympy.ntheory import primitive_root, sqrt_mod

from .cyclo import CycloElt, CycloIndex, conj_map
from .errors import NotApplicable, RepresentationNotFound, TableTooLarge
from .ntheory import is_prime

JACOBI_LIMIT = 10**6


def _require(q: int, modulus: int) -> None:
    if not isinstance(q, int) or q <= modulus or not is_prime(q) or q % modulus != 1:
        raise NotApplicable(f"{q} is not a prime congruent to 1 mod {modulus}")


def _is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


# Fibonacci -------------------------------------------------------------


def fibonacci_mod(k: int, m: int) -> int:
    """F_k mod m by fast doubling."""

    def fd(n):
        if n == 0:
            return 0, 1
        a, b = fd(n >> 1)
        c = a * ((2 * b - a) % m) % m
        d = (a * a + b * b) % m
        return (d, (c + d) % m) if n & 1 else (c, d)

    return fd(k)[0]


@dataclass(frozen=True)
class FibonacciCertificate:
    index: int
    residue: int

    def to_dict(self) -> dict:
        return {"index": self.index, "residue": self.residue}


def fibonacci_certificate(q: int) -> FibonacciCertificate:
    _require(q, 5)
    k = (q - 1) // 5
    return FibonacciCertificate(k, fibonacci_mod(k, q))


def fibonacci_artiad_test(q: int) -> bool:
    return fibonacci_certificate(q).residue == 0


# quintic residues of the golden ratio -----------------------------------


def quintic_residue_test(q: int) -> bool:
    _require(q, 5)
    inv2 = pow(2, -1, q)
    roots = {(1 + s) * inv2 % q for s in sqrt_mod(5, q, all_roots=True)}
    assert len(roots) == 2
    return all(pow(r, (q - 1) // 5, q) == 1 for r in roots)


# Jacobi sums ------------------------------------------------------------

_R5 = CycloIndex(5, 1)


@dataclass(frozen=True)
class JacobiCertificate:
    primitive_root: int
    q_coeffs: tuple[int, int, int, int, int]

    def element(self) -> CycloElt:
        return CycloElt.from_poly(self.q_coeffs, _R5)

    def modulus_identity(self) -> int:
        """R(w) R(w^-1), which must equal q."""
        r = self.element()
        prod = r * conj_map(r, -1)
        if any(prod.coords[1:]):
            raise ArithmeticError("R(w) R(w^-1) is not rational")
        return prod.coords[0]

    def to_dict(self) -> dict:
        return {"primitive_root": self.primitive_root, **{f"q{i}": c for i, c in enumerate(self.q_coeffs)}}


def jacobi_certificate(q: int) -> JacobiCertificate:
    _require(q, 5)
    if q >= JACOBI_LIMIT:
        raise TableTooLarge(f"index table for {q} exceeds the {JACOBI_LIMIT} limit")
    g = primitive_root(q)
    ind = [0] * q
    x = 1
    for k in range(q - 1):
        ind[x] = k
        x = x * g % q
    counts = [0] * 5
    for s in range(1, q - 1):
        counts[(ind[s] + ind[s + 1]) % 5] += 1
    shift = (q - 1) // 5
    return JacobiCertificate(g, tuple(c - shift for c in counts))


def jacobi_artiad_test(q: int) -> tuple[bool, JacobiCertificate]:
    cert = jacobi_certificate(q)
    c = cert.q_coeffs
    return len({v % 5 for v in c[1:]}) == 1, cert


# Dickson's quadratic form ----------------------------------------------


@dataclass(frozen=True)
class DicksonCertificate:
    x: int
    u: int
    v: int
    w: int

    def check(self, q: int) -> bool:
        x, u, v, w = self.x, self.u, self.v, self.w
        return (
            16 * q == x * x + 50 * u * u + 50 * v * v + 125 * w * w
            and x % 5 == 1
            and x * w == (v - 2 * u) ** 2 - 5 * u * u
        )

    def to_dict(self) -> dict:
        return {"x": self.x, "u": self.u, "v": self.v, "w": self.w}


def dickson_representation(q: int) -> DicksonCertificate:
    """First (u, v) in a fixed scan order admitting x, w with both side conditions.

    With T = (v - 2u)^2 - 5u^2 and S = 16q - 50(u^2 + v^2), a nonzero w must
    satisfy 125 w^4 - S w^2 + T^2 = 0, so w^2 is read off a discriminant.
    """
    _require(q, 5)
    bound = isqrt(16 * q // 50)
    span = [0] + [s * k for k in range(1, bound + 1) for s in (1, -1)]
    for u in span:
        for v in span:
            S = 16 * q - 50 * (u * u + v * v)
            if S < 0:
                continue
            T = (v - 2 * u) ** 2 - 5 * u * u
            if T == 0:
                if _is_square(S):
                    r = isqrt(S)
                    for x in (r, -r):
                        if x % 5 == 1:
                            return DicksonCertificate(x, u, v, 0)
                continue
            disc = S * S - 500 * T * T
            if not _is_square(disc):
                continue
            for num in (S + isqrt(disc), S - isqrt(disc)):
                if num <= 0 or num % 250:
                    continue
                W = num // 250
                if not _is_square(W):
                    continue
                for w in (isqrt(W), -isqrt(W)):
                    if w and T % w == 0 and (T // w) % 5 == 1:
                        cert = DicksonCertificate(T // w, u, v, w)
                        if cert.check(q):
                            return cert
    raise RepresentationNotFound(f"no Dickson representation of 16*{q}")


def dickson_artiad_test(q: int) -> tuple[bool, DicksonCertificate]:
    cert = dickson_representation(q)
    return cert.w % 5 == 0, cert


# p = 3 ------------------------------------------------------------------


def binary_form_solution(q: int) -> tuple[int, int] | None:
    """(x, y) with 4q = x^2 + 243 y^2 and x, y >= 0, or None."""
    _require(q, 3)
    for y in range(isqrt(4 * q // 243) + 1):
        r = 4 * q - 243 * y * y
        if _is_square(r):
            return isqrt(r), y
    return None


def binary_form_test(q: int) -> bool:
    return binary_form_solution(q) is not None


def cubic_residue_test(q: int) -> bool:
    _require(q, 3)
    return pow(3, (q - 1) // 3, q) == 1

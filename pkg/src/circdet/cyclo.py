"""Exact arithmetic in Z[w] for w a primitive p^i-th root of unity.

Also hosts the measure/norm machinery for integer polynomials, the p-th
power descent and the pi-adic tools (pi = 1 - w) used by the classifiers.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Sequence

from .errors import UnsupportedRing
from .poly import IntPoly, cyclotomic_poly, resultant, totient_pk

SUPPORTED_RINGS = ((5, 1), (3, 1), (3, 2))

INFINITE = math.inf


@dataclass(frozen=True)
class CycloIndex:
    p: int
    i: int

    def __post_init__(self):
        if self.p < 3 or self.p % 2 == 0 or self.i < 1:
            raise ValueError(f"need an odd prime p and level >= 1, got ({self.p}, {self.i})")

    @property
    def degree(self) -> int:
        return totient_pk(self.p, self.i)

    @property
    def order(self) -> int:
        return self.p**self.i

    @property
    def modulus(self) -> IntPoly:
        return cyclotomic_poly(self.p, self.i)

    @property
    def supported(self) -> bool:
        return (self.p, self.i) in SUPPORTED_RINGS

    def require_supported(self) -> None:
        if not self.supported:
            raise UnsupportedRing(f"Z[w_{self.order}] is not one of the supported rings")

    def units_mod(self) -> list[int]:
        return [j for j in range(1, self.order) if j % self.p]

    def __str__(self) -> str:
        return f"Z[w_{self.order}]"


@lru_cache(maxsize=None)
def _pi_inverse_numerator(p: int, i: int) -> tuple[int, ...]:
    # p / (1 - w) = r(w) with r = (Phi(x) - p) / (x - 1)
    q, rem = (cyclotomic_poly(p, i) - p).div_x_minus_1()
    assert rem == 0
    return q.coeffs


def _reduce(coeffs: Sequence[int], idx: CycloIndex) -> tuple[int, ...]:
    n = idx.degree
    if len(coeffs) <= n:
        return tuple(coeffs) + (0,) * (n - len(coeffs))
    r = list(coeffs)
    # Phi_{p^i}(x) = sum_{k<p} x^(k * p^(i-1)); x^(top) = -(lower terms)
    step = idx.p ** (idx.i - 1)
    for k in range(len(r) - 1, n - 1, -1):
        c = r[k]
        if c:
            r[k] = 0
            base = k - n
            for m in range(idx.p - 1):
                r[base + m * step] -= c
    return tuple(r[:n])


@dataclass(frozen=True)
class CycloElt:
    """Element of Z[w] in the power basis 1, w, ..., w^(phi-1)."""

    index: CycloIndex
    coords: tuple[int, ...]

    @classmethod
    def from_poly(cls, f: IntPoly | Sequence[int], idx: CycloIndex) -> CycloElt:
        coeffs = f.coeffs if isinstance(f, IntPoly) else tuple(f)
        return cls(idx, _reduce(coeffs, idx))

    @classmethod
    def const(cls, c: int, idx: CycloIndex) -> CycloElt:
        return cls.from_poly((c,), idx)

    @classmethod
    def root(cls, idx: CycloIndex, k: int = 1) -> CycloElt:
        """w^k."""
        return cls.from_poly(IntPoly.monomial(k % idx.order), idx)

    def as_poly(self) -> IntPoly:
        return IntPoly(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _other(self, other) -> CycloElt:
        if isinstance(other, int):
            return CycloElt.const(other, self.index)
        if not isinstance(other, CycloElt):
            return NotImplemented
        if other.index != self.index:
            raise ValueError("elements live in different rings")
        return other

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return CycloElt(self.index, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self) -> CycloElt:
        return CycloElt(self.index, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return CycloElt(self.index, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloElt(self.index, tuple(other * a for a in self.coords))
        other = self._other(other)
        if other is NotImplemented:
            return other
        a, b = self.coords, other.coords
        prod = [0] * (len(a) + len(b) - 1)
        for s, x in enumerate(a):
            if x:
                for t, y in enumerate(b):
                    prod[s + t] += x * y
        return CycloElt(self.index, _reduce(prod, self.index))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> CycloElt:
        if k < 0:
            return unit_inverse(self) ** (-k)
        result, base = CycloElt.const(1, self.index), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self, j: int) -> CycloElt:
        """Image under the automorphism w -> w^j."""
        return conj_map(self, j)

    def norm(self) -> int:
        return resultant(self.index.modulus, self.as_poly())

    def residue(self) -> int:
        """Image in Z[w]/(pi) = Z/p."""
        return sum(self.coords) % self.index.p

    def exact_div_int(self, c: int) -> CycloElt:
        out = []
        for a in self.coords:
            q, r = divmod(a, c)
            if r:
                raise ArithmeticError(f"{self} is not divisible by {c}")
            out.append(q)
        return CycloElt(self.index, tuple(out))

    def __str__(self) -> str:
        return f"{self.as_poly()} in {self.index}"


def to_cyclo(F: IntPoly, idx: CycloIndex) -> CycloElt:
    return CycloElt.from_poly(F, idx)


def conj_map(e: CycloElt, j: int) -> CycloElt:
    idx = e.index
    if gcd(j, idx.p) != 1:
        raise ValueError(f"conjugation exponent {j} must be coprime to {idx.p}")
    j %= idx.order
    out = [0] * (j * (idx.degree - 1) + 1)
    for k, a in enumerate(e.coords):
        out[k * j] += a
    # fold x^order = 1 before the cyclotomic reduction
    folded = [0] * idx.order
    for k, a in enumerate(out):
        folded[k % idx.order] += a
    return CycloElt.from_poly(folded, idx)


def unit_inverse(u: CycloElt) -> CycloElt:
    """Inverse of a unit of norm 1, as the product of its other conjugates."""
    idx = u.index
    inv = CycloElt.const(1, idx)
    for j in idx.units_mod():
        if j != 1:
            inv = inv * conj_map(u, j)
    n = u.norm()
    if n == -1:
        inv = -inv
    elif n != 1:
        raise ArithmeticError(f"{u} is not a unit (norm {n})")
    return inv


# pi-adic tools ----------------------------------------------------------


def divide_by_pi(e: CycloElt) -> CycloElt | None:
    """e / (1 - w) if it lies in Z[w], else None."""
    idx = e.index
    r = CycloElt(idx, _reduce(_pi_inverse_numerator(idx.p, idx.i), idx))
    t = e * r
    if any(a % idx.p for a in t.coords):
        return None
    return CycloElt(idx, tuple(a // idx.p for a in t.coords))


def pi_valuation(e: CycloElt) -> float | int:
    """Exponent of (1 - w) in e; ``math.inf`` for zero."""
    if e.is_zero():
        return INFINITE
    v = 0
    while True:
        q = divide_by_pi(e)
        if q is None:
            return v
        e, v = q, v + 1


def pi_power(idx: CycloIndex, k: int) -> CycloElt:
    return CycloElt.from_poly(IntPoly((1, -1)) ** k, idx)


def pi_digits(e: CycloElt, n: int) -> list[int]:
    """First n digits d_j in [0, p) of e = sum d_j (1 - w)^j."""
    digits = []
    for _ in range(n):
        d = e.residue()
        digits.append(d)
        q = divide_by_pi(e - d)
        assert q is not None
        e = q
    return digits


def divide_by_pi_power(e: CycloElt, k: int) -> CycloElt:
    for _ in range(k):
        q = divide_by_pi(e)
        if q is None:
            raise ArithmeticError(f"{e} is not divisible by (1-w)^{k}")
        e = q
    return e


# polynomial norms and measures -----------------------------------------


def norm(F: IntPoly, p: int, k: int) -> int:
    """Product of F over the primitive p^k-th roots of unity."""
    if F.is_zero():
        return 0
    phi = cyclotomic_poly(p, k)
    return resultant(phi, F % phi)


@dataclass(frozen=True)
class NormProfile:
    f_at_1: int
    norms: tuple[int, ...]
    measure: int

    def to_dict(self) -> dict:
        return {"f1": self.f_at_1, "norms": list(self.norms), "measure": self.measure}

    @classmethod
    def from_dict(cls, d: dict) -> NormProfile:
        return cls(int(d["f1"]), tuple(int(n) for n in d["norms"]), int(d["measure"]))

    def as_tuple(self) -> tuple[int, ...]:
        return (self.f_at_1,) + self.norms


def norm_profile(F: IntPoly, p: int, t: int) -> NormProfile:
    f1 = F.at_one()
    norms = tuple(norm(F, p, k) for k in range(1, t + 1))
    m = f1
    for n in norms:
        m *= n
    return NormProfile(f1, norms, m)


def measure(F: IntPoly, p: int, t: int) -> tuple[int, NormProfile]:
    """Exact circulant determinant of order p^t for the coefficient vector of F."""
    prof = norm_profile(F, p, t)
    return prof.measure, prof


def float_measure(F: IntPoly, n: int) -> float:
    """Floating product of F over all n-th roots of unity (test oracle only).

    Pairwise (balanced) product ordering keeps the rounding error small.
    """
    import numpy as np

    z = np.exp(2j * np.pi * np.arange(n) / n)
    vals = np.polyval(np.array(F.coeffs[::-1] or [0], dtype=float), z)
    vals = list(vals)
    while len(vals) > 1:
        nxt = [vals[k] * vals[k + 1] for k in range(0, len(vals) - 1, 2)]
        if len(vals) % 2:
            nxt.append(vals[-1])
        vals = nxt
    return vals[0].real


# p-th power descent -----------------------------------------------------


def pth_power_reduce(F: IntPoly, p: int) -> IntPoly:
    """g with prod_{j<p} F(x w^j) = g(x^p), w a primitive p-th root of unity.

    The product is formed in Z[y]/(y^p - 1) and mapped to Z[w] = Z[y]/Phi_p.
    """
    if F.is_zero():
        return IntPoly()
    d = F.degree
    acc = [[0] * p for _ in range(1)]
    acc[0][0] = 1
    for j in range(p):
        # F(x w^j): coefficient of x^k carries y^(jk mod p)
        fac = [(a, (j * k) % p) for k, a in enumerate(F.coeffs)]
        out = [[0] * p for _ in range(len(acc) + d)]
        for s, row in enumerate(acc):
            for k, (a, e) in enumerate(fac):
                if a:
                    tgt = out[s + k]
                    for m, c in enumerate(row):
                        if c:
                            tgt[(m + e) % p] += a * c
        acc = out
    H = []
    for row in acc:
        top = row[p - 1]
        if any(row[m] != top for m in range(1, p - 1)):
            raise ArithmeticError("descent product is not rational")
        H.append(row[0] - top)
    if any(H[k] for k in range(len(H)) if k % p):
        raise ArithmeticError("descent product is not a polynomial in x^p")
    return IntPoly(H[::p])


def defggg_cubic(F: IntPoly) -> IntPoly:
    """Closed form of the p = 3 descent: f0^3 + x f1^3 + x^2 f2^3 - 3x f0 f1 f2."""
    parts = [IntPoly(F.coeffs[r::3]) for r in range(3)]
    f0, f1, f2 = parts
    return f0**3 + (f1**3).shift(1) + (f2**3).shift(2) - (f0 * f1 * f2).shift(1).scale(3)


# units ------------------------------------------------------------------


def _elt(idx: CycloIndex, *coeffs: int) -> CycloElt:
    return CycloElt.from_poly(IntPoly(coeffs), idx)


def standard_units(idx: CycloIndex) -> list[CycloElt]:
    """Generators used for unit reduction in the supported rings."""
    idx.require_supported()
    w = CycloElt.root(idx)
    one_plus = _elt(idx, 1, 1)
    if (idx.p, idx.i) == (5, 1):
        return [-CycloElt.const(1, idx), w, one_plus, _elt(idx, 0, 1, 0, 0, 1) ** 2]
    if (idx.p, idx.i) == (3, 1):
        return [-CycloElt.const(1, idx), w]
    return [-CycloElt.const(1, idx), w, one_plus, _elt(idx, 1, 0, 0, 0, 1)]


@dataclass(frozen=True)
class UnitProbe:
    u1: CycloElt
    u2: CycloElt
    valuation_s: float | int = field(default=INFINITE)


def _allowed_odd_valuations(idx: CycloIndex) -> set[int]:
    return {idx.p**ell for ell in range(idx.i)}


def _random_unit(idx: CycloIndex, rng: random.Random, gens: list[CycloElt]) -> CycloElt:
    u = CycloElt.const(1, idx)
    conj = idx.units_mod()
    for _ in range(rng.randint(1, 3)):
        g = conj_map(rng.choice(gens), rng.choice(conj))
        e = rng.randint(-2, 2)
        if e:
            u = u * g**e
    return u


def newman_unit_probe(idx: CycloIndex, trials: int, rng_seed: int = 0) -> list[UnitProbe]:
    """Fuzz the unit criterion: odd pi-valuations of u1 - u2 must be powers p^l, l < i.

    Pairs are drawn three ways: independent units, u2 = u1 * v with v a p-th
    power (pushes u1 - u2 deep into pi), and u2 = u1 * v / conj(v) (real-type
    quotients).  Returns the violating pairs, which should never exist.
    """
    idx.require_supported()
    rng = random.Random(rng_seed)
    gens = standard_units(idx)
    allowed = _allowed_odd_valuations(idx)
    violations = []
    for trial in range(trials):
        u1 = _random_unit(idx, rng, gens)
        mode = trial % 3
        if mode == 0:
            u2 = _random_unit(idx, rng, gens)
        elif mode == 1:
            u2 = u1 * _random_unit(idx, rng, gens) ** (idx.p ** rng.randint(1, idx.i))
        else:
            v = _random_unit(idx, rng, gens)
            u2 = u1 * v * unit_inverse(conj_map(v, -1))
        s = pi_valuation(u1 - u2)
        if s != INFINITE and s % 2 == 1 and s not in allowed:
            violations.append(UnitProbe(u1, u2, s))
    return violations

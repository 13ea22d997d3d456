"""Perissad/artiad and Type 1-4 classification by pi-adic unit reduction.

A norm-q generator e is multiplied by standard units, one pi-adic digit at
a time, until it reads 1 + 0*pi + ... ; the first digit no unit can touch
decides the type.  Unit exponents are recorded as (sign, I, J, K) meaning
sign * w^I * (1 + w)^J * B^K, where B is (w^4 + w)^2 in Z[w_5] and
1 + w^4 in Z[w_9].  Z[w_3] only needs sign and I.
"""

from __future__ import annotations

import enum
from functools import lru_cache
from dataclasses import dataclass, field

from .cyclo import (
    CycloElt,
    CycloIndex,
    divide_by_pi_power,
    pi_digits,
    unit_inverse,
)
from .errors import NotApplicable
from .lattice import find_norm_element
from .ntheory import is_prime
from .poly import IntPoly

R5 = CycloIndex(5, 1)
R3 = CycloIndex(3, 1)
R9 = CycloIndex(3, 2)


class Label(str, enum.Enum):
    PERISSAD = "Perissad"
    ARTIAD = "Artiad"
    TYPE1 = "Type1"
    TYPE2 = "Type2"
    TYPE3 = "Type3"
    TYPE4 = "Type4"

    def __str__(self) -> str:
        return self.value


Exps = tuple[int, int, int, int]


def _combine(a: Exps, b: Exps) -> Exps:
    return (a[0] * b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])


def _times(a: Exps, m: int) -> Exps:
    return (a[0] ** m, a[1] * m, a[2] * m, a[3] * m)


_IDENT: Exps = (1, 0, 0, 0)


def _big_unit(idx: CycloIndex) -> CycloElt:
    if idx == R5:
        return CycloElt.from_poly(IntPoly((0, 1, 0, 0, 1)) ** 2, idx)
    if idx == R9:
        return CycloElt.from_poly(IntPoly((1, 0, 0, 0, 1)), idx)
    raise ValueError(f"no K-generator in {idx}")


def unit_from_exponents(idx: CycloIndex, exps: Exps) -> CycloElt:
    sign, I, J, K = exps
    u = CycloElt.root(idx, I) * sign
    if J:
        u = u * CycloElt.from_poly(IntPoly((1, 1)), idx) ** J
    if K:
        u = u * _big_unit(idx) ** K
    return u


# per ring: (level, multipliers to try); level 0 aims at digit 1, others at 0
def _schedule(idx: CycloIndex):
    if idx == R5:
        return [
            (0, [(s, 0, J, 0) for J in (0, 1) for s in (1, -1)]),
            (1, [(1, 1, 0, 0)]),
            (2, [(-1, 0, 0, 1)]),
        ]
    if idx == R9:
        return [
            (0, [_IDENT, (-1, 0, 0, 0)]),
            (1, [(1, 1, 0, 0)]),
            (2, [(-1, 1, 1, 0)]),
            (3, [(1, 3, 0, 0)]),
            (4, [(-1, 6, 2, 1)]),
            (6, [(-1, 3, 3, 0)]),
        ]
    raise ValueError(f"no digit schedule for {idx}")


def _digit(e: CycloElt, level: int) -> int:
    return pi_digits(e, level + 1)[level]


@dataclass
class ReductionCertificate:
    generator: CycloElt
    unit_exponents: Exps
    steps: list[Exps]
    reduced_form: list[int]
    key_digit: int
    key_level: int
    extras: dict = field(default_factory=dict)

    @property
    def index(self) -> CycloIndex:
        return self.generator.index

    def unit(self) -> CycloElt:
        return unit_from_exponents(self.index, self.unit_exponents)

    def reduced(self) -> CycloElt:
        return self.unit() * self.generator

    def verify(self) -> bool:
        e = self.reduced()
        return pi_digits(e, len(self.reduced_form)) == self.reduced_form

    def to_dict(self) -> dict:
        sign, I, J, K = self.unit_exponents
        d = {
            "generator": list(self.generator.coords),
            "sign": sign,
            "I": I,
            "J": J,
            "K": K,
            "reduced_form": self.reduced_form,
            "key_level": self.key_level,
            "key_digit": self.key_digit,
        }
        for k, v in self.extras.items():
            d[k] = v
        return d


@dataclass
class TypeVerdict:
    prime_q: int
    context: str
    label: Label
    certificates: list = field(default_factory=list)

    @property
    def reduction(self) -> ReductionCertificate | None:
        for c in self.certificates:
            if isinstance(c, ReductionCertificate):
                return c
        return None


def _run_schedule(e: CycloElt, schedule) -> tuple[CycloElt, Exps, list[Exps]]:
    idx = e.index
    total, steps = _IDENT, []
    for level, gens in schedule:
        target = 1 if level == 0 else 0
        if level == 0:
            tries = gens
        else:
            (g,) = gens
            tries = [_times(g, m) for m in range(idx.p)]
        for exps in tries:
            cand = unit_from_exponents(idx, exps) * e
            if _digit(cand, level) == target:
                e = cand
                total = _combine(exps, total)
                steps.append(exps)
                break
        else:
            raise ArithmeticError(f"digit {level} of {e} cannot be normalized")
    return e, total, steps


def _normalize(exps: Exps, idx: CycloIndex) -> Exps:
    return (exps[0], exps[1] % idx.order, exps[2], exps[3])


def _key(e: CycloElt, level: int) -> tuple[int, CycloElt]:
    """h with e = 1 + (w - 1)^level h; returns (h(1) mod p, h)."""
    h = divide_by_pi_power(e - 1, level)
    if level % 2:
        h = -h  # (w - 1)^level = -(1 - w)^level
    return h.residue(), h


def reduce_mod5(e: CycloElt) -> ReductionCertificate:
    """Bring a Z[w_5] element prime to pi into the form 1 + (w-1)^3 h."""
    if e.index != R5:
        raise ValueError("expects an element of Z[w_5]")
    red, total, steps = _run_schedule(e, _schedule(R5))
    key, h = _key(red, 3)
    return ReductionCertificate(e, _normalize(total, R5), steps, pi_digits(red, 4), key, 3, {"h": list(h.coords)})


def reduce_mod3(e: CycloElt) -> ReductionCertificate:
    """Write +-w^I e = delta + 3A(w - 1) + 9b with delta in {1, 2, 4}."""
    if e.index != R3:
        raise ValueError("expects an element of Z[w_3]")
    w = CycloElt.root(R3)
    cur = e
    for I in range(3):
        x0, x1 = cur.coords
        a, c = x0 + x1, x1  # cur = a + c (w - 1)
        if c % 3 == 0:
            break
        cur = cur * w
    else:
        raise ArithmeticError(f"{e} is divisible by 1 - w")
    for sign in (1, -1):
        if (sign * a) % 9 in (1, 2, 4):
            break
    else:
        raise ArithmeticError(f"{e} has no admissible constant digit")
    delta = (sign * a) % 9
    b = (sign * a - delta) // 9
    A = sign * c // 3
    red = cur * sign
    exps = (sign, I, 0, 0)
    return ReductionCertificate(
        e, exps, [exps], pi_digits(red, 4), A % 3, 3, {"delta": delta, "A": A, "b": b}
    )


def reduce_mod9(e: CycloElt) -> ReductionCertificate:
    """Unit-reduce in Z[w_9].

    Stops at 1 + (w-1)^5 h when the pi^5 digit is nonzero (key level 5);
    otherwise continues to 1 + (w-1)^7 t (key level 7).
    """
    if e.index != R9:
        raise ValueError("expects an element of Z[w_9]")
    sched = _schedule(R9)
    red, total, steps = _run_schedule(e, sched[:5])
    if _digit(red, 5):
        key, h = _key(red, 5)
        return ReductionCertificate(e, _normalize(total, R9), steps, pi_digits(red, 9), key, 5, {"h": list(h.coords)})
    red, t6, s6 = _run_schedule(red, sched[5:])
    total = _combine(t6, total)
    key, t = _key(red, 7)
    return ReductionCertificate(e, _normalize(total, R9), steps + s6, pi_digits(red, 9), key, 7, {"t": list(t.coords)})


def reduce_element(e: CycloElt) -> ReductionCertificate:
    idx = e.index
    if idx == R5:
        return reduce_mod5(e)
    if idx == R3:
        return reduce_mod3(e)
    if idx == R9:
        return reduce_mod9(e)
    idx.require_supported()
    raise AssertionError


def label_of(cert: ReductionCertificate) -> Label:
    """Label read off a reduction; Z[w_9] level-5 keys mean Type1."""
    idx = cert.index
    if idx == R5:
        return Label.PERISSAD if cert.key_digit else Label.ARTIAD
    if idx == R3:
        return Label.TYPE1 if cert.key_digit else Label.TYPE2
    if cert.key_level == 5:
        return Label.TYPE1
    return Label.TYPE3 if cert.key_digit else Label.TYPE4


def classify_element(e: CycloElt) -> tuple[Label, ReductionCertificate]:
    cert = reduce_element(e)
    return label_of(cert), cert


def _require(q: int, modulus: int, p: int) -> None:
    if not isinstance(q, int) or q == p or not is_prime(q) or q % modulus != 1:
        raise NotApplicable(f"{q} is not a prime congruent to 1 mod {modulus}")


@lru_cache(maxsize=4096)
def classify_mod5(q: int) -> TypeVerdict:
    _require(q, 5, 5)
    label, cert = classify_element(find_norm_element(q, R5))
    return TypeVerdict(q, "mod5", label, [cert])


@lru_cache(maxsize=4096)
def classify_mod3(q: int) -> TypeVerdict:
    _require(q, 3, 3)
    label, cert = classify_element(find_norm_element(q, R3))
    delta = cert.extras["delta"]
    if {1: 1, 4: 2, 7: 4}[q % 9] != delta:
        raise ArithmeticError(f"constant digit {delta} inconsistent with {q} mod 9")
    return TypeVerdict(q, "mod3", label, [cert])


@lru_cache(maxsize=4096)
def classify_mod9(q: int) -> TypeVerdict:
    _require(q, 9, 3)
    low = classify_mod3(q)
    if low.label == Label.TYPE1:
        return TypeVerdict(q, "mod9", Label.TYPE1, low.certificates)
    label, cert = classify_element(find_norm_element(q, R9))
    if label == Label.TYPE1:
        raise ArithmeticError(f"{q}: 3-norm Type2 but 9-norm reduction gave a nonzero pi^5 digit")
    return TypeVerdict(q, "mod9", label, low.certificates + [cert])


def classify(q: int, context: str) -> TypeVerdict:
    fn = {"mod5": classify_mod5, "mod3": classify_mod3, "mod9": classify_mod9}.get(context)
    if fn is None:
        raise ValueError(f"unknown context {context!r}")
    return fn(q)


def unit_check(u: CycloElt) -> CycloElt:
    """Inverse of u, raising if u is not a unit."""
    return unit_inverse(u)

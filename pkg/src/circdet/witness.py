"""Explicit polynomials whose circulant determinant is 5^3 q, 3^4 q or 3^5 q.

Each builder starts from an exact norm representation of q, glues it to
the right cyclotomic factors and corrects F(1) with a multiple of the
all-ones polynomial.  Every plan is re-verified by exact resultants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .classify import R3, R5, R9, Label, classify_mod3, classify_mod5, classify_mod9, reduce_element
from .cyclo import CycloElt, CycloIndex, NormProfile, divide_by_pi_power, norm, norm_profile
from .errors import NotApplicable, NotCoprime, TypeMismatch
from .lattice import find_norm_element
from .ntheory import DEFAULT_BUDGET, factor, valuation
from .poly import ONE, X, IntPoly, cyclotomic_poly

XM1 = X - 1
ONE_MINUS_X = 1 - X


@dataclass
class ExactTypeRep:
    """q = N_i(1 + (x-1)^k h) for Z[w_5] (k=3) and Z[w_9] (k=5 or 7).

    For Z[w_3] the data is (delta, A, B) with
    3q = N_1(delta (1-x) + 9A + 9B(x-1)).
    """

    q: int
    ring: CycloIndex
    h: IntPoly | None = None
    k: int | None = None
    delta: int | None = None
    A: int | None = None
    B: int | None = None
    reduced: CycloElt | None = None

    def form(self) -> IntPoly:
        if self.ring == R3:
            return ONE_MINUS_X.scale(self.delta) + 9 * self.A + XM1.scale(9 * self.B)
        return ONE + XM1**self.k * self.h

    def key(self) -> int:
        if self.ring == R3:
            return self.A % 3
        return self.h.at_one() % self.ring.p

    def check(self) -> bool:
        target = 3 * self.q if self.ring == R3 else self.q
        return norm(self.form(), self.ring.p, self.ring.i) == target


def exact_type_representation(q: int, ring: CycloIndex) -> ExactTypeRep:
    ring.require_supported()
    if q % ring.order != 1:
        raise NotApplicable(f"{q} does not split in {ring}")
    cert = reduce_element(find_norm_element(q, ring))
    if ring == R3:
        x = cert.extras
        rep = ExactTypeRep(q, ring, delta=x["delta"], A=x["A"], B=x["A"] - x["b"], reduced=cert.reduced())
    else:
        key = "t" if cert.key_level == 7 else "h"
        rep = ExactTypeRep(q, ring, h=IntPoly(cert.extras[key]), k=cert.key_level, reduced=cert.reduced())
    if not rep.check():
        raise ArithmeticError(f"norm identity failed for {q} in {ring}")
    return rep


@dataclass
class WitnessPlan:
    target: int
    group: tuple[int, int]
    ell: int
    lam: int
    f_core: IntPoly
    F: IntPoly
    profile: NormProfile
    kind: str = ""
    q: int | None = None
    multiplier: int = 1
    notes: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.group[0] ** self.group[1]

    def verify(self) -> bool:
        prof = norm_profile(self.F, *self.group)
        return prof == self.profile and prof.measure == self.target and self.F.degree < self.n

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "target": self.target,
            "group": list(self.group),
            "q": self.q,
            "ell": self.ell,
            "lambda": self.lam,
            "multiplier": self.multiplier,
            "F": self.F.format(),
            "profile": self.profile.to_dict(),
        }


def _min_ell(c: int, mod: int) -> int:
    """Smallest ell > 0 with ell * c = 1 mod ``mod``."""
    for ell in range(1, mod + 1):
        if (ell * c) % mod == 1:
            return ell
    raise ArithmeticError(f"{c} is not invertible mod {mod}")


def _assemble(f: IntPoly, c: int, mod: int, p: int, t: int, kind: str, q: int) -> WitnessPlan:
    """F = (1 + ... + x^(ell-1)) f - lambda (1 + ... + x^(n-1)) mod x^n - 1."""
    n = p**t
    ell = _min_ell(c, mod)
    lam = (ell * c - 1) // mod
    F = (IntPoly.geometric(ell) * f - IntPoly.geometric(n).scale(lam)).mod_xn_minus_1(n)
    prof = norm_profile(F, p, t)
    plan = WitnessPlan(prof.measure, (p, t), ell, lam, f, F, prof, kind, q)
    return plan


def _expect(plan: WitnessPlan, shape: tuple[int, ...]) -> WitnessPlan:
    if plan.profile.as_tuple() != shape:
        raise ArithmeticError(f"{plan.kind} for q={plan.q}: profile {plan.profile.as_tuple()} != {shape}")
    return plan


def _phi(p: int, k: int) -> IntPoly:
    return cyclotomic_poly(p, k)


def witness_5cubed(q: int) -> WitnessPlan:
    """F with (F(1), N_1, N_2) = (5, 5q, 5)."""
    if classify_mod5(q).label != Label.PERISSAD:
        raise TypeMismatch(f"{q} is an artiad")
    rep = exact_type_representation(q, R5)
    # (x-1)^4 = 5(x^2+1)^2 - 4 Phi_5, so -(x-1)(1 + (x-1)^3 h) = 1 - x + 5g mod Phi_5
    g = -(IntPoly((1, 0, 1)) ** 2) * rep.h
    if norm(ONE_MINUS_X + g.scale(5), 5, 1) != 5 * q:
        raise ArithmeticError(f"5q form failed for {q}")
    f = ONE_MINUS_X + _phi(5, 2) * g
    plan = _assemble(f, g.at_one(), 5, 5, 2, "5cubed", q)
    return _expect(plan, (5, 5 * q, 5))


def _three_q_form_9(rep: ExactTypeRep) -> tuple[IntPoly, IntPoly]:
    """(delta(x), t) with 3q = N_2(1 - x + 3 delta + 3 (x-1)^2 t)."""
    E = rep.reduced * CycloElt.from_poly(ONE_MINUS_X, R9)
    w6 = CycloElt.from_poly(-(X**3) * (1 + X) ** 3, R9)
    base = CycloElt.from_poly(ONE_MINUS_X, R9)
    for m in range(3):
        wE = w6**m * E
        for delta in (X, IntPoly.const(-1)):
            D = wE - base - CycloElt.from_poly(delta, R9) * 3
            if any(c % 3 for c in D.coords):
                continue
            try:
                t = divide_by_pi_power(D.exact_div_int(3), 2)
            except ArithmeticError:
                continue
            return delta, t.as_poly()  # (x-1)^2 = (1-x)^2
    raise ArithmeticError(f"no 3q form for {rep.q} in Z[w_9]")


def witness_3p4(q: int) -> WitnessPlan:
    """F with (F(1), N_1, N_2, N_3) = (3, 3, 3q, 3)."""
    if q % 9 != 1 or classify_mod9(q).label != Label.TYPE1:
        raise TypeMismatch(f"{q} is not a Type1 prime congruent to 1 mod 9")
    rep = exact_type_representation(q, R9)
    if rep.k != 5:
        raise ArithmeticError(f"{q}: expected a level-5 key in Z[w_9]")
    delta, t = _three_q_form_9(rep)
    core = ONE_MINUS_X + delta.scale(3) + (XM1**2 * t).scale(3)
    if norm(core, 3, 2) != 3 * q:
        raise ArithmeticError(f"3q form failed for {q}")
    p9, p27 = _phi(3, 2), _phi(3, 3)
    f = ONE_MINUS_X + p27 * (delta + XM1**2 * t) + (X * t * p9 * p27)
    plan = _assemble(f, delta.at_one() + 3 * t.at_one(), 9, 3, 3, "3p4", q)
    return _expect(plan, (3, 3, 3 * q, 3))


_DELTA_X = {1: ONE, 2: 1 + X**3, 4: (1 + X**3) ** 2}


def witness_3p5_mod3(q: int) -> WitnessPlan:
    """F with (F(1), N_1, N_2, N_3) = (9, 3q, 3, 3)."""
    if classify_mod3(q).label != Label.TYPE1:
        raise TypeMismatch(f"{q} is not a Type1 prime congruent to 1 mod 3")
    rep = exact_type_representation(q, R3)
    A, B = rep.A, rep.B
    f = _DELTA_X[rep.delta] * ONE_MINUS_X + _phi(3, 2) * _phi(3, 3) * (A + XM1.scale(B))
    plan = _assemble(f, A, 3, 3, 3, "3p5_mod3", q)
    return _expect(plan, (9, 3 * q, 3, 3))


def witness_3p5_type3(q: int) -> WitnessPlan:
    """F with (F(1), N_1, N_2, N_3) = (9, 3, 3q, 3)."""
    if q % 9 != 1 or classify_mod9(q).label != Label.TYPE3:
        raise TypeMismatch(f"{q} is not a Type3 prime")
    rep = exact_type_representation(q, R9)
    E = rep.reduced * CycloElt.from_poly(ONE_MINUS_X, R9)
    D = E - CycloElt.from_poly(ONE_MINUS_X, R9)
    t = divide_by_pi_power(D.exact_div_int(3), 2).as_poly()
    if norm(ONE_MINUS_X + (XM1**2 * t).scale(3), 3, 2) != 3 * q:
        raise ArithmeticError(f"3q form failed for {q}")
    p9, p27 = _phi(3, 2), _phi(3, 3)
    f = ONE_MINUS_X + p27 * XM1**2 * t + X * p9 * p27 * t
    plan = _assemble(f, t.at_one(), 3, 3, 3, "3p5_type3", q)
    return _expect(plan, (9, 3, 3 * q, 3))


def _cyclotomic_prime(q: int) -> IntPoly:
    return IntPoly.geometric(q)


def multiply_coprime(plan: WitnessPlan, m: int, budget: int = DEFAULT_BUDGET) -> WitnessPlan:
    """Scale the measure by m (coprime to p) without touching any N_k."""
    p, t = plan.group
    if m == 0 or gcd(m, p) != 1:
        raise NotCoprime(f"{m} is not coprime to {p}")
    n = p**t
    F = plan.F
    for q, a in (factor(m, budget).items() if abs(m) > 1 else ()):
        for _ in range(a):
            F = (F * _cyclotomic_prime(q)).mod_xn_minus_1(n)
    if m < 0:
        F = -F
    prof = norm_profile(F, p, t)
    if prof.norms != plan.profile.norms or prof.measure != plan.target * m:
        raise ArithmeticError("coprime multiplication changed the norms")
    return WitnessPlan(
        prof.measure, plan.group, plan.ell, plan.lam, plan.f_core, F, prof, plan.kind, plan.q, plan.multiplier * m
    )


def verify_witness(F: IntPoly, p: int, t: int, expected: int) -> tuple[bool, NormProfile]:
    prof = norm_profile(F, p, t)
    return prof.measure == expected, prof


def _trivial_plan(F: IntPoly, p: int, t: int, kind: str) -> WitnessPlan:
    prof = norm_profile(F, p, t)
    return WitnessPlan(prof.measure, (p, t), 1, 0, F, F, prof, kind)


def witness_for_value(n: int, D: int, budget: int = DEFAULT_BUDGET) -> WitnessPlan:
    """A verified F with M_n(F) = D for n in {25, 27}, or TypeMismatch."""
    from .membership import membership

    if n not in (25, 27):
        raise NotApplicable("witnesses are built for n = 25 and n = 27")
    p, t = (5, 2) if n == 25 else (3, 3)
    verdict = membership(n, D, budget)
    if not verdict.is_member:
        raise TypeMismatch(f"{D} is not a determinant for Z_{n}: {verdict.reason['kind']}")
    kind = verdict.reason["kind"]
    if kind == "coprime":
        return multiply_coprime(_trivial_plan(ONE, p, t, "coprime"), D, budget)
    v = valuation(D, p)
    if kind == "high-power":
        k = D // p ** (2 * t)
        prod = ONE
        for j in range(1, t + 1):
            prod = prod * _phi(p, j)
        F = (XM1 + prod.scale(k)).mod_xn_minus_1(n)
        plan = _trivial_plan(F, p, t, "high-power")
        if plan.target != D:
            raise ArithmeticError("high-power construction failed")
        return plan
    q = verdict.reason["q"]
    if n == 25:
        plan = witness_5cubed(q)
    elif v == 4:
        plan = witness_3p4(q)
    elif verdict.verdict.label == Label.TYPE1:
        plan = witness_3p5_mod3(q)
    else:
        plan = witness_3p5_type3(q)
    return multiply_coprime(plan, D // plan.target, budget)

"""Exact membership in S(Z_25) and S(Z_27), and the general exclusion test."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from sympy.ntheory import n_order

from .classify import Label, TypeVerdict, classify_mod3, classify_mod5, classify_mod9
from .errors import NotApplicable
from .ntheory import DEFAULT_BUDGET, factor, is_prime, valuation

MEMBER = "Member"
NON_MEMBER = "NonMember"
EXCLUDED = "Excluded"
NOT_EXCLUDED = "NotExcluded"


@dataclass
class MembershipVerdict:
    value: int
    group: tuple[int, int]
    decision: str
    reason: dict
    verdict: TypeVerdict | None = None

    @property
    def is_member(self) -> bool:
        return self.decision == MEMBER

    def to_dict(self) -> dict:
        d = {"value": self.value, "group": list(self.group), "decision": self.decision, "reason": dict(self.reason)}
        if self.verdict is not None:
            d["reason"]["verdict"] = {
                "q": self.verdict.prime_q,
                "context": self.verdict.context,
                "label": self.verdict.label.value,
                "reductions": [c.to_dict() for c in self.verdict.certificates],
            }
        return d


@dataclass
class GeneralCheck:
    value: int
    group: tuple[int, int]
    status: str
    reason: dict
    required: list[int] = field(default_factory=list)
    assignment: list[tuple[int, int, int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "group": list(self.group),
            "status": self.status,
            "reason": self.reason,
            "required_moduli": self.required,
            "assignment": [{"modulus": m, "q": q, "a": a} for m, q, a in self.assignment],
        }


def _prime_power_split(n: int) -> tuple[int, int] | None:
    for q, e in factor(n).items():
        return (q, e) if q**e == n else None
    return None


def base_membership(n: int, D: int) -> MembershipVerdict | None:
    """Values every group of order n attains: coprime ones and multiples of n^2."""
    if n < 2:
        raise NotApplicable("group order must be at least 2")
    group = _prime_power_split(n) or (n, 1)
    if gcd(D, n) == 1:
        return MembershipVerdict(D, group, MEMBER, {"kind": "coprime"})
    if D % (n * n) == 0:
        return MembershipVerdict(D, group, MEMBER, {"kind": "high-power", "divisor": n * n})
    return None


def divisibility_check(n: int, D: int) -> MembershipVerdict | None:
    """NonMember when p | D but p^(t+1) does not divide D for some p^t || n."""
    for p, t in factor(n).items():
        if D % p == 0 and D % p ** (t + 1):
            v = valuation(D, p) if D else t + 1
            return MembershipVerdict(D, (p, t), NON_MEMBER, {"kind": "excluded-valuation", "prime": p, "v": v})
    return None


def _nonzero(D: int) -> None:
    if D == 0:
        raise NotApplicable("0 is not considered")


def _candidates(m: int, budget: int, modulus: int) -> tuple[list[int], dict[int, int]]:
    f = factor(m, budget) if abs(m) > 1 else {}
    return [q for q in f if q % modulus == 1], f


def _no_qualifier(D, group, v, f):
    return MembershipVerdict(
        D, group, NON_MEMBER, {"kind": "no-qualifying-prime", "v": v, "factors": {str(q): e for q, e in f.items()}}
    )


def member_z25(D: int, budget: int = DEFAULT_BUDGET) -> MembershipVerdict:
    _nonzero(D)
    group = (5, 2)
    v = valuation(D, 5)
    if v == 0:
        return MembershipVerdict(D, group, MEMBER, {"kind": "coprime"})
    if v >= 4:
        return MembershipVerdict(D, group, MEMBER, {"kind": "high-power", "v": v})
    if v < 3:
        return MembershipVerdict(D, group, NON_MEMBER, {"kind": "excluded-valuation", "v": v})
    cands, f = _candidates(abs(D) // 125, budget, 5)
    for q in cands:
        tv = classify_mod5(q)
        if tv.label == Label.PERISSAD:
            return MembershipVerdict(D, group, MEMBER, {"kind": "qualifying-prime", "v": v, "q": q}, tv)
    return _no_qualifier(D, group, v, f)


def member_z27(D: int, budget: int = DEFAULT_BUDGET) -> MembershipVerdict:
    _nonzero(D)
    group = (3, 3)
    v = valuation(D, 3)
    if v == 0:
        return MembershipVerdict(D, group, MEMBER, {"kind": "coprime"})
    if v >= 6:
        return MembershipVerdict(D, group, MEMBER, {"kind": "high-power", "v": v})
    if v < 4:
        return MembershipVerdict(D, group, NON_MEMBER, {"kind": "excluded-valuation", "v": v})
    m = abs(D) // 3**v
    if v == 4:
        cands, f = _candidates(m, budget, 9)
        for q in cands:
            tv = classify_mod9(q)
            if tv.label == Label.TYPE1:
                return MembershipVerdict(D, group, MEMBER, {"kind": "qualifying-prime", "v": v, "q": q}, tv)
        return _no_qualifier(D, group, v, f)
    cands, f = _candidates(m, budget, 3)
    for q in cands:
        tv = classify_mod3(q)
        if tv.label == Label.TYPE1:
            return MembershipVerdict(D, group, MEMBER, {"kind": "qualifying-prime", "v": v, "q": q}, tv)
        if q % 9 == 1:
            tv = classify_mod9(q)
            if tv.label == Label.TYPE3:
                return MembershipVerdict(D, group, MEMBER, {"kind": "qualifying-prime", "v": v, "q": q}, tv)
    return _no_qualifier(D, group, v, f)


def membership(n: int, D: int, budget: int = DEFAULT_BUDGET) -> MembershipVerdict:
    if n == 25:
        return member_z25(D, budget)
    if n == 27:
        return member_z27(D, budget)
    raise NotApplicable(f"exact membership is only decided for n = 25 and n = 27, not {n}")


# general p^t -------------------------------------------------------------


def _min_odd_exponent(q: int, modulus: int) -> int | None:
    """Smallest odd a with q^a = 1 mod modulus, if any."""
    o = n_order(q, modulus)
    return o if o % 2 else None


def _match(required: list[int], budgets: dict[int, int]) -> list[tuple[int, int, int]] | None:
    """Assign each modulus a prime q with an odd exponent, within v_q(m)."""
    if not required:
        return []
    mod, rest = required[0], required[1:]
    for q in sorted(budgets):
        a = _min_odd_exponent(q, mod)
        if a is None or a > budgets[q]:
            continue
        budgets[q] -= a
        sub = _match(rest, budgets)
        budgets[q] += a
        if sub is not None:
            return [(mod, q, a)] + sub
    return None


def theorem1_check(p: int, t: int, D: int, budget: int = DEFAULT_BUDGET) -> GeneralCheck:
    """Necessary conditions for D in S(Z_{p^t}); Excluded values are never measures."""
    if not is_prime(p) or p < 3:
        raise NotApplicable(f"{p} must be an odd prime")
    if t < 2 or (p == 3 and t < 3):
        raise NotApplicable(f"the exclusion test needs t >= 2 (t >= 3 for p = 3), got t = {t}")
    _nonzero(D)
    group = (p, t)
    j = valuation(D, p)
    if j == 0:
        return GeneralCheck(D, group, NOT_EXCLUDED, {"kind": "coprime"})
    if j >= 2 * t:
        return GeneralCheck(D, group, NOT_EXCLUDED, {"kind": "high-power", "j": j})
    if j <= t:
        return GeneralCheck(D, group, EXCLUDED, {"kind": "divisibility", "j": j})
    m = abs(D) // p**j
    if p == 3 and j == t + 1:
        levels = range(2, t)
        case = "b"
    else:
        levels = range(1, 2 * t - j + 1)
        case = "a"
    required = sorted((p**i for i in levels), reverse=True)
    budgets = factor(m, budget) if m > 1 else {}
    assignment = _match(required, dict(budgets))
    reason = {"kind": "prime-power-structure", "j": j, "case": case}
    if assignment is None:
        return GeneralCheck(D, group, EXCLUDED, reason, required)
    return GeneralCheck(D, group, NOT_EXCLUDED, reason, required, assignment)

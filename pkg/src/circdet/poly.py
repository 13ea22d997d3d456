"""Dense integer polynomials and exact resultants.

Coefficients are stored constant term first, so ``IntPoly((1, 0, 2))`` is
``1 + 2x^2``.  The zero polynomial has an empty coefficient tuple.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(int(a) for a in c)


class IntPoly:
    """Immutable polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, c: int) -> IntPoly:
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPoly:
        return cls([0] * k + [c])

    @classmethod
    def geometric(cls, n: int) -> IntPoly:
        """``1 + x + ... + x^(n-1)``."""
        return cls([1] * n)

    @classmethod
    def parse(cls, text: str) -> IntPoly:
        """Read the canonical comma-separated form, constant term first."""
        text = text.strip()
        if not text:
            return cls()
        return cls(int(tok) for tok in text.split(","))

    def format(self) -> str:
        return ",".join(str(a) for a in self.coeffs) if self.coeffs else "0"

    # basic queries ------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, j: int) -> int:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly.const(other)
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for j, a in enumerate(self.coeffs):
            if a == 0:
                continue
            mono = "" if j == 0 else ("x" if j == 1 else f"x^{j}")
            if mono and abs(a) == 1:
                s = mono
            else:
                s = f"{abs(a)}{'*' if mono else ''}{mono}"
            terms.append(("-" if a < 0 else "+", s))
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, s in terms[1:]:
            out += f" {sign} {s}"
        return out

    # evaluation ---------------------------------------------------------
    def __call__(self, x):
        acc = 0 * x
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def at_one(self) -> int:
        return sum(self.coeffs)

    def content(self) -> int:
        g = 0
        for a in self.coeffs:
            g = gcd(g, a)
        return g

    # ring operations ----------------------------------------------------
    def _coerce(self, other) -> IntPoly:
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, int):
            return IntPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for j, c in enumerate(b):
            out[j] += c
        return IntPoly(out)

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly(-a for a in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return IntPoly(_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IntPoly:
        if k < 0:
            raise ValueError("negative power")
        result, base = IntPoly.const(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: int) -> IntPoly:
        return IntPoly(c * a for a in self.coeffs)

    def exact_div_int(self, c: int) -> IntPoly:
        out = []
        for a in self.coeffs:
            q, r = divmod(a, c)
            if r:
                raise ArithmeticError(f"coefficient {a} not divisible by {c}")
            out.append(q)
        return IntPoly(out)

    def compose_power(self, k: int) -> IntPoly:
        """``F(x^k)``."""
        if k == 1 or not self.coeffs:
            return self
        out = [0] * (k * self.degree + 1)
        for j, a in enumerate(self.coeffs):
            out[k * j] = a
        return IntPoly(out)

    def shift(self, k: int) -> IntPoly:
        """Multiply by ``x^k``."""
        return IntPoly([0] * k + list(self.coeffs)) if self.coeffs else self

    def divmod_monic(self, m: IntPoly) -> tuple[IntPoly, IntPoly]:
        if m.lead() != 1:
            raise ValueError("divisor must be monic")
        r = list(self.coeffs)
        dm = m.degree
        if len(r) - 1 < dm:
            return IntPoly(), self
        q = [0] * (len(r) - dm)
        mc = m.coeffs
        for k in range(len(r) - 1, dm - 1, -1):
            c = r[k]
            if c:
                q[k - dm] = c
                base = k - dm
                for j in range(dm + 1):
                    r[base + j] -= c * mc[j]
        return IntPoly(q), IntPoly(r[:dm])

    def __mod__(self, m: IntPoly) -> IntPoly:
        return self.divmod_monic(m)[1]

    def div_x_minus_1(self) -> tuple[IntPoly, int]:
        """Synthetic division by ``x - 1``; returns (quotient, remainder = F(1))."""
        c = self.coeffs
        if not c:
            return IntPoly(), 0
        q = [0] * (len(c) - 1)
        acc = 0
        for j in range(len(c) - 1, 0, -1):
            acc += c[j]
            q[j - 1] = acc
        return IntPoly(q), acc + c[0]

    def mod_xn_minus_1(self, n: int) -> IntPoly:
        """Reduce modulo ``x^n - 1`` (fold exponents mod n)."""
        out = [0] * n
        for j, a in enumerate(self.coeffs):
            out[j % n] += a
        return IntPoly(out)


def _mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


X = IntPoly((0, 1))
ONE = IntPoly((1,))


# resultants -------------------------------------------------------------


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of a by b: lc(b)^(deg a - deg b + 1) * a mod b."""
    da, db = len(a) - 1, len(b) - 1
    lb = b[-1]
    r = list(a)
    for k in range(da, db - 1, -1):
        c = r[k] if k < len(r) else 0
        r = [lb * x for x in r]
        if c:
            base = k - db
            for j in range(db + 1):
                r[base + j] -= c * b[j]
        r = r[:k]
    while r and r[-1] == 0:
        r.pop()
    return r


def _content(c: Sequence[int]) -> int:
    g = 0
    for a in c:
        g = gcd(g, a)
        if g == 1:
            break
    return g


def resultant(a: IntPoly | Sequence[int], b: IntPoly | Sequence[int]) -> int:
    """Exact resultant by the subresultant pseudo-remainder sequence.

    Fraction-free: every intermediate division is exact over the integers.
    """
    A = list(a.coeffs if isinstance(a, IntPoly) else _trim(a))
    B = list(b.coeffs if isinstance(b, IntPoly) else _trim(b))
    if not A or not B:
        return 0
    da, db = len(A) - 1, len(B) - 1
    if da == 0:
        return A[0] ** db
    if db == 0:
        return B[0] ** da

    ca, cb = _content(A), _content(B)
    A = [x // ca for x in A]
    B = [x // cb for x in B]
    t = ca**db * cb**da
    s = 1
    if da < db:
        A, B = B, A
        da, db = db, da
        if da & 1 and db & 1:
            s = -s

    g = h = 1
    while True:
        delta = da - db
        if da & 1 and db & 1:
            s = -s
        R = _prem(A, B)
        A = B
        da = db
        if not R:
            return 0
        denom = g * h**delta
        B = [x // denom for x in R]
        db = len(B) - 1
        g = A[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = g**delta // h ** (delta - 1)
        if db == 0:
            break
    # final: lc(B)^da / h^(da-1)
    if da == 1:
        res = B[0]
    else:
        res = B[0] ** da // h ** (da - 1)
    return s * t * res


# cyclotomic polynomials -------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic_poly(p: int, k: int) -> IntPoly:
    """Phi_{p^k}(x) = Phi_p(x^(p^(k-1))) for a prime p and level k >= 1."""
    if k < 1:
        raise ValueError("level must be >= 1")
    return IntPoly.geometric(p).compose_power(p ** (k - 1))


def totient_pk(p: int, k: int) -> int:
    return p ** (k - 1) * (p - 1)

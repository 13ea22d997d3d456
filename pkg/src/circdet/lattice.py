"""Generators of split prime ideals in Z[w] via LLL on the trace form."""

from __future__ import annotations

import itertools
from functools import lru_cache

from .cyclo import CycloElt, CycloIndex
from .errors import NoSplit, NotApplicable, SearchExhausted
from .ntheory import is_prime
from .poly import IntPoly


@lru_cache(maxsize=None)
def trace_gram(p: int, i: int) -> tuple[tuple[int, ...], ...]:
    """Gram matrix of Tr(a * conj(b)) in the power basis."""
    idx = CycloIndex(p, i)
    n, order = idx.degree, idx.order

    def tr(m):
        m %= order
        if m == 0:
            return n
        if m % p ** (i - 1) == 0:
            return -(p ** (i - 1))
        return 0

    return tuple(tuple(tr(j - k) for k in range(n)) for j in range(n))


def _ip(u, v, G) -> int:
    return sum(u[j] * G[j][k] * v[k] for j in range(len(u)) if u[j] for k in range(len(v)) if v[k])


def lll(basis: list[list[int]], gram) -> list[list[int]]:
    """Integral LLL (delta = 3/4) under the form ``gram``.

    Works with the integer Gram determinants d_i and scaled coefficients
    lambda_{k,j} = d_{j+1} mu_{k,j}, so every division is exact.
    Arrays are 1-based; slot 0 is padding.
    """
    n = len(basis)
    b = [None] + [list(v) for v in basis]
    d = [1] + [0] * n
    lam = [[0] * (n + 1) for _ in range(n + 1)]

    def red(k, l):
        if 2 * abs(lam[k][l]) > d[l]:
            q = (2 * lam[k][l] + d[l]) // (2 * d[l])
            b[k] = [a - q * c for a, c in zip(b[k], b[l])]
            lam[k][l] -= q * d[l]
            for i in range(1, l):
                lam[k][i] -= q * lam[l][i]

    def swap(k, kmax):
        b[k], b[k - 1] = b[k - 1], b[k]
        for j in range(1, k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        m = lam[k][k - 1]
        B = (d[k - 2] * d[k] + m * m) // d[k - 1]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k] * lam[i][k - 1] - m * t) // d[k - 1]
            lam[i][k - 1] = (B * t + m * lam[i][k]) // d[k]
        d[k - 1] = B

    if n == 0:
        return []
    d[1] = _ip(b[1], b[1], gram)
    k, kmax = 2, 1
    while k <= n:
        if k > kmax:
            kmax = k
            for j in range(1, k + 1):
                u = _ip(b[k], b[j], gram)
                for i in range(1, j):
                    u = (d[i] * u - lam[k][i] * lam[j][i]) // d[i - 1]
                if j < k:
                    lam[k][j] = u
                else:
                    if u == 0:
                        raise ValueError("basis vectors are linearly dependent")
                    d[k] = u
        red(k, k - 1)
        if 4 * d[k] * d[k - 2] < 3 * d[k - 1] ** 2 - 4 * lam[k][k - 1] ** 2:
            swap(k, kmax)
            k = max(2, k - 1)
            continue
        for l in range(k - 2, 0, -1):
            red(k, l)
        k += 1
    return b[1:]


def root_of_unity_mod(q: int, order: int, p: int) -> int:
    """A primitive ``order``-th root of unity mod q (order a power of p)."""
    if (q - 1) % order:
        raise NoSplit(f"{q} is not 1 mod {order}")
    for g in range(2, q):
        r = pow(g, (q - 1) // order, q)
        if pow(r, order // p, q) != 1:
            return r
    raise SearchExhausted(f"no primitive {order}-th root of unity mod {q}")


def ideal_basis(q: int, idx: CycloIndex) -> list[list[int]]:
    """Z-basis of the prime ideal (q, w - r) in power-basis coordinates."""
    r = root_of_unity_mod(q, idx.order, idx.p)
    n = idx.degree
    rows = [[q] + [0] * (n - 1)]
    for k in range(1, n):
        v = [0] * n
        v[0] = -pow(r, k, q)
        v[k] = 1
        rows.append(v)
    return rows


def _check_inputs(q: int, idx: CycloIndex) -> None:
    if q == idx.p or not is_prime(q):
        raise NotApplicable(f"{q} must be a prime different from {idx.p}")
    if q % idx.order != 1:
        raise NoSplit(f"{q} does not split completely in {idx}")


def find_norm_element(q: int, idx: CycloIndex, max_box: int = 4) -> CycloElt:
    """An element of absolute norm q, from the LLL-reduced ideal lattice.

    Small combinations of the reduced basis are tried in order of trace
    length inside boxes of growing radius; any ideal element of norm q
    generates the ideal.
    """
    _check_inputs(q, idx)
    G = trace_gram(idx.p, idx.i)
    red = lll(ideal_basis(q, idx), G)
    n = idx.degree
    seen = set()
    box = 1
    while box <= max_box:
        combos = []
        for c in itertools.product(range(-box, box + 1), repeat=n):
            if c in seen or not any(c):
                continue
            seen.add(c)
            v = [sum(ci * red[k][j] for k, ci in enumerate(c)) for j in range(n)]
            combos.append((_ip(v, v, G), c, v))
        combos.sort()
        for _, _, v in combos:
            e = CycloElt(idx, tuple(v))
            if abs(e.norm()) == q:
                return e
        box *= 2
    raise SearchExhausted(f"no norm-{q} element found in {idx}")


def find_norm_element_direct(q: int, idx: CycloIndex, max_coeff: int = 3) -> CycloElt:
    """Cross-check path: brute-force small coefficient vectors with norm q."""
    _check_inputs(q, idx)
    n = idx.degree
    for box in range(1, max_coeff + 1):
        for c in itertools.product(range(-box, box + 1), repeat=n):
            if max(abs(a) for a in c) != box:
                continue
            e = CycloElt(idx, c)
            if abs(e.norm()) == q:
                return e
    raise SearchExhausted(f"direct search for norm {q} in {idx} exhausted at box {max_coeff}")


def element_from_poly(coeffs, idx: CycloIndex) -> CycloElt:
    return CycloElt.from_poly(IntPoly(coeffs), idx)

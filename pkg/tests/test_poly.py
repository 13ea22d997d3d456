import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix

from circdet.poly import IntPoly, cyclotomic_poly, resultant


def sylvester_resultant(a, b):
    """Determinant of the Sylvester matrix, an independent exact oracle."""
    a, b = list(a.coeffs[::-1]), list(b.coeffs[::-1])
    m, n = len(a) - 1, len(b) - 1
    if m == 0:
        return a[0] ** n
    if n == 0:
        return b[0] ** m
    rows = []
    for i in range(n):
        rows.append([0] * i + a + [0] * (n - 1 - i))
    for i in range(m):
        rows.append([0] * i + b + [0] * (m - 1 - i))
    return int(Matrix(rows).det(method="bareiss"))


coeffs = st.lists(st.integers(-9, 9), min_size=1, max_size=12)


def nonzero_poly(cs):
    p = IntPoly(tuple(cs))
    return p if not p.is_zero() else IntPoly((1,))


def test_cyclotomic_values():
    assert cyclotomic_poly(5, 1) == IntPoly((1, 1, 1, 1, 1))
    assert cyclotomic_poly(3, 2) == IntPoly((1, 0, 0, 1, 0, 0, 1))
    for p in (2, 3, 5, 7, 11, 13):
        for k in (1, 2, 3):
            assert cyclotomic_poly(p, k).at_one() == p


def test_parse_format_roundtrip():
    f = IntPoly.parse("1,0,0,0,1,1")
    assert f == IntPoly((1, 0, 0, 0, 1, 1))
    assert IntPoly.parse(f.format()) == f
    assert IntPoly.parse("0").is_zero()


@given(coeffs)
def test_format_roundtrip_property(cs):
    f = IntPoly(tuple(cs))
    assert IntPoly.parse(f.format()) == f


@settings(max_examples=60, deadline=None)
@given(coeffs, coeffs)
def test_resultant_matches_sylvester(a, b):
    A, B = nonzero_poly(a), nonzero_poly(b)
    assert resultant(A, B) == sylvester_resultant(A, B)


def test_resultant_against_cyclotomics():
    rng = random.Random(7)
    for _ in range(25):
        F = IntPoly(tuple(rng.randint(-5, 5) for _ in range(rng.randint(1, 15))))
        if F.is_zero():
            continue
        for p, k in ((3, 1), (3, 2), (5, 1), (5, 2), (7, 1)):
            phi = cyclotomic_poly(p, k)
            assert resultant(phi, F) == sylvester_resultant(phi, F)


@given(coeffs, coeffs)
def test_ring_laws(a, b):
    A, B = IntPoly(tuple(a)), IntPoly(tuple(b))
    assert (A * B).at_one() == A.at_one() * B.at_one()
    assert A + B - B == A
    assert A * B == B * A


@given(coeffs, st.integers(2, 30))
def test_mod_xn_minus_1_preserves_values_at_roots(a, n):
    A = IntPoly(tuple(a))
    R = A.mod_xn_minus_1(n)
    assert R.degree < n
    assert R.at_one() == A.at_one()


def test_divmod_monic():
    f = IntPoly((3, -2, 0, 5, 1, 7))
    m = cyclotomic_poly(3, 2)
    q, r = f.divmod_monic(m)
    assert q * m + r == f and r.degree < m.degree

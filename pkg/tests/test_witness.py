import pytest

from circdet.classify import R3, R5, R9
from circdet.cyclo import norm
from circdet.errors import NotCoprime, TypeMismatch
from circdet.poly import IntPoly
from circdet.witness import (
    exact_type_representation,
    multiply_coprime,
    verify_witness,
    witness_3p4,
    witness_3p5_mod3,
    witness_3p5_type3,
    witness_5cubed,
    witness_for_value,
)

from reference_data import KNOWN_WITNESSES


def test_type_representations():
    r = exact_type_representation(11, R5)
    assert r.check() and r.h.at_one() % 5 != 0
    r = exact_type_representation(7, R3)
    assert r.delta == 4 and r.A % 3 != 0 and r.check()
    r = exact_type_representation(73, R9)
    assert r.k == 7 and r.h.at_one() % 3 != 0
    assert norm(r.form(), 3, 2) == 73


@pytest.mark.parametrize(
    "builder,q,measure,shape",
    [
        (witness_5cubed, 11, 1375, (5, 55, 5)),
        (witness_5cubed, 31, 3875, None),
        (witness_3p4, 19, 1539, (3, 3, 57, 3)),
        (witness_3p4, 109, 8829, None),
        (witness_3p5_mod3, 7, 1701, (9, 21, 3, 3)),
        (witness_3p5_mod3, 13, 3159, None),
        (witness_3p5_type3, 73, 17739, (9, 3, 219, 3)),
        (witness_3p5_type3, 271, 65853, None),
    ],
)
def test_builders(builder, q, measure, shape):
    plan = builder(q)
    assert plan.verify()
    assert plan.target == measure
    if shape is not None:
        assert plan.profile.as_tuple() == shape


@pytest.mark.parametrize("builder,q", [(witness_5cubed, 211), (witness_3p4, 73), (witness_3p5_mod3, 67), (witness_3p5_type3, 991)])
def test_builders_reject_wrong_type(builder, q):
    with pytest.raises(TypeMismatch):
        builder(q)


def test_multiply_coprime():
    plan = witness_5cubed(11)
    assert multiply_coprime(plan, 1).profile == plan.profile
    three = multiply_coprime(plan, 3)
    assert three.target == 4125 and three.profile.norms == plan.profile.norms and three.verify()
    neg = multiply_coprime(plan, -1)
    assert neg.target == -1375 and neg.verify()
    with pytest.raises(NotCoprime):
        multiply_coprime(plan, 10)


def test_verify_known_witnesses():
    assert verify_witness(IntPoly((1, 0, 0, 0, 0, 0, 0, 0, 1, 1)), 3, 3, 1539)[0]
    assert verify_witness(IntPoly((1, 0, 0, 1, 1)), 3, 3, 8829)[0]
    assert verify_witness(IntPoly((1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 1)), 5, 2, 1375)[0]
    for q, p, t, v, F in KNOWN_WITNESSES:
        ok, prof = verify_witness(F, p, t, q * p**v)
        assert ok, (q, prof)


def test_plan_degree_below_group_order():
    for plan in (witness_5cubed(41), witness_3p4(37), witness_3p5_type3(307)):
        assert plan.F.degree < plan.n


def test_value_dispatch():
    assert witness_for_value(25, 7).target == 7
    assert witness_for_value(27, 3**6 * 2).target == 3**6 * 2
    with pytest.raises(TypeMismatch):
        witness_for_value(25, 125 * 211)

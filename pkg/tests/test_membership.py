import pytest

from circdet.errors import NotApplicable
from circdet.membership import (
    EXCLUDED,
    NOT_EXCLUDED,
    base_membership,
    divisibility_check,
    member_z25,
    member_z27,
    membership,
    theorem1_check,
)
from circdet.witness import witness_for_value


def test_base_rules():
    assert base_membership(25, 7).is_member
    assert base_membership(25, 625).is_member
    assert base_membership(25, 10) is None


def test_divisibility_rule():
    assert divisibility_check(25, 10).decision == "NonMember"
    assert divisibility_check(27, 9 * 2).decision == "NonMember"
    assert divisibility_check(25, 1375) is None


@pytest.mark.parametrize(
    "D,member",
    [(1375, True), (125 * 211, False), (-125 * 11 * 3, True), (7, True), (5**4 * 2, True), (25 * 11, False)],
)
def test_z25(D, member):
    assert member_z25(D).is_member == member


@pytest.mark.parametrize(
    "D,member",
    [(81 * 19, True), (81 * 73, False), (243 * 7, True), (243 * 61, False), (243 * 73, True), (27 * 7, False), (3**6 * 5, True)],
)
def test_z27(D, member):
    assert member_z27(D).is_member == member


def test_type4_needs_another_factor():
    assert not member_z27(243 * 991).is_member
    assert member_z27(243 * 991 * 7).is_member


def test_certificate_attached():
    v = member_z25(1375)
    assert v.verdict is not None and v.verdict.prime_q == 11
    d = v.to_dict()
    assert d["reason"]["verdict"]["label"] == "Perissad"


def test_zero_rejected():
    with pytest.raises(NotApplicable):
        member_z25(0)


def test_general_exclusion():
    assert theorem1_check(5, 2, 125).status == EXCLUDED
    assert theorem1_check(5, 3, 5**6 * 7).status == NOT_EXCLUDED


def test_general_check_is_only_necessary():
    # 73 = 1 mod 9 covers the mod-9 slot while the Type1 test still fails
    assert theorem1_check(3, 3, 81 * 73).status == NOT_EXCLUDED
    assert not member_z27(81 * 73).is_member


def test_general_check_needs_order_nine_prime():
    # 7 has order 3 mod 9 so 7^3 = 1 mod 9 may fill the slot; 7 alone cannot
    assert theorem1_check(3, 3, 81 * 7).status == EXCLUDED
    assert theorem1_check(3, 3, 81 * 7**3).status == NOT_EXCLUDED


@pytest.mark.parametrize("n,D", [(25, 1375), (25, -4125), (27, 1539), (27, 243 * 7 * 2), (27, 243 * 73), (25, 5**5)])
def test_member_verdicts_have_witnesses(n, D):
    assert membership(n, D).is_member
    plan = witness_for_value(n, D)
    assert plan.verify() and plan.target == D


def test_factors_beyond_trial_division_are_plain_ints():
    from circdet.ntheory import factor

    n = 1000003 * 1000033
    f = factor(n)
    assert f == {1000003: 1, 1000033: 1}
    assert all(type(q) is int for q in f)
    assert member_z25(125 * 1000003 * 1000033).value == 125 * n

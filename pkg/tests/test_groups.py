import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tfab.characteristics import INF, Characteristic, HType
from tfab.errors import MembershipViolation
from tfab.generators import random_fd_group, random_member
from tfab.groups import (OMEGA, Element, FDGroup, check_element, elem_char, elem_height,
                         elementarily_equivalent, height_rank1, iso1_equivalent, member,
                         realizable_htypes, szmielew_profile, tf_invariant)
from tfab.oracles import element_types, tf_dimension_oracle

C = Characteristic.parse
Z, Q = C("(0;)"), C("(inf;)")


def fd(*pairs):
    return FDGroup(tuple((C(c) if isinstance(c, str) else c, m) for c, m in pairs))


def test_membership():
    assert member(F(3, 2), C("(0; 2:3)"))
    assert not member(F(1, 3), C("(0; 2:inf)"))
    assert member(F(7), C("(0; 5:2)"))


@pytest.mark.parametrize("chi, x, p, want", [
    ("(0;)", 6, 2, 1),
    ("(inf;)", 5, 7, INF),
    ("(0; 2:3)", F(3, 2), 2, 2),
])
def test_height_rank1(chi, x, p, want):
    assert height_rank1(C(chi), F(x), p) == want


def test_height_rank1_by_search():
    # largest k with x / 2^k still in B
    B = C("(0; 2:3)")
    x = F(3, 2)
    k = 0
    while member(x / 2 ** (k + 1), B):
        k += 1
    assert height_rank1(B, x, 2) == k


def test_element_examples():
    A = fd((Z, 1), (Q, 1))
    a = Element.from_dict({(0, 0): 1, (1, 0): 1})
    assert elem_char(A, a) == Z
    assert elem_height(fd((Z, 1)), Element.unit(0, 0, 4), 2) == 2
    B = fd(("(0; 2:5)", 1), (Z, 1))
    b = Element.from_dict({(0, 0): F(1, 2), (1, 0): 2})
    assert elem_height(B, b, 2) == min(5 - 1, 0 + 1)


def test_membership_violation():
    with pytest.raises(MembershipViolation):
        check_element(fd((Z, 1)), Element.unit(0, 0, F(1, 2)))


@pytest.mark.parametrize("group", [fd((Z, 3)), fd(("(0; 2:inf)", 1)), fd((Z, 1), ("(0; 2:inf)", 1))])
@pytest.mark.parametrize("p", [2, 3])
def test_tf_matches_dimension_oracle(group, p):
    want = tf_invariant(group, p)
    for n in range(3):
        assert tf_dimension_oracle(group, p, n) == want


def test_tf_examples():
    assert tf_invariant(fd((Z, 3)), 5) == 3
    assert tf_invariant(fd((Q, 1)), 2) == 0
    A = fd(("(0; 2:inf)", 1))
    assert (tf_invariant(A, 2), tf_invariant(A, 3)) == (0, 1)
    prof = szmielew_profile(fd((Z, 1), ("(0; 2:inf)", 1)))
    assert prof.tf(2) == 1 and prof.tf(3) == 2 and prof.tf(101) == 2
    js = szmielew_profile(fd((Z, 1))).to_json()
    assert js["D"] == 0 and js["Exp"] == "inf" and js["Tf"]["default"] == 1
    assert szmielew_profile(fd((Q, 2))).tf(7) == 0
    assert tf_invariant(fd((Z, OMEGA)), 3) is OMEGA


def test_elementary_equivalence_examples():
    assert elementarily_equivalent(fd((Z, 1)), fd((Z, 1), (Q, 1)))
    assert not elementarily_equivalent(fd((Z, 1)), fd((Z, 2)))
    A = fd((Z, 2), ("(0; 3:inf)", 1))
    assert elementarily_equivalent(A, A)


def test_realizable_htypes_examples():
    assert realizable_htypes(fd((Z, 1))) == {HType.make(0)}
    assert realizable_htypes(fd((Z, 1), (Q, 1))) == {HType.make(0), HType.make(INF)}
    A = fd(("(0; 2:inf)", 1), ("(0; 3:inf)", 1))
    assert HType.make(0) in realizable_htypes(A)


@pytest.mark.parametrize("group", [
    fd((Z, 1), (Q, 1)),
    fd(("(0; 2:inf)", 1), ("(0; 3:inf)", 1)),
    fd(("(0; 2:inf, 3:inf)", 1), ("(inf; 2:1)", 1)),
])
def test_realizable_htypes_against_brute_force(group):
    assert realizable_htypes(group) == set(element_types(group, 3))


def test_iso1_examples():
    assert not iso1_equivalent(fd((Z, 1)), fd((Z, 1), (Q, 1)))
    assert iso1_equivalent(fd((Z, 1), ("(0; 2:inf)", 1)), fd(("(0; 2:inf)", 1), (Z, 1)))
    assert not iso1_equivalent(fd((Z, 1)), fd((Z, 2)))


@given(st.integers(0, 10_000))
def test_iso1_implies_ee(seed):
    rng = random.Random(seed)
    A, B = random_fd_group(rng), random_fd_group(rng)
    if iso1_equivalent(A, B):
        assert elementarily_equivalent(A, B)


@given(st.integers(0, 10_000))
def test_height_is_min_over_support(seed):
    rng = random.Random(seed)
    A = random_fd_group(rng)
    a = random_member(rng, A)
    for p in (2, 3, 5, 7):
        want = min(height_rank1(A.summands[i][0], v, p) for (i, _), v in a.coords)
        assert elem_height(A, a, p) == want

import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tfab.characteristics import INF, Characteristic
from tfab.errors import NotAPairRelation, PreconditionViolated, ZeroElement
from tfab.generators import bounded_rank_group, random_member
from tfab.groups import Element, FDGroup, elem_height
from tfab.oracles import sympy_rank
from tfab.reduction import (DependencyRelation, find_dependency, is_p_height_independent,
                            rank_of, reduce_pair, reduce_tuple, split_infinite_dependency)

Z, Q = Characteristic.zero(), Characteristic.top()
ZZ = FDGroup(((Z, 2),))


def e(*coords):
    return Element.from_dict({(0, j): v for j, v in enumerate(coords) if v})


def test_find_dependency_examples():
    c = e(1)
    rel = find_dependency(ZZ, [c.scale(2), c.scale(3)])
    assert rel.coefficients in ((3, -2), (-3, 2))
    assert find_dependency(ZZ, [e(1, 0), e(0, 1)]) is None
    rel = find_dependency(ZZ, [e(1, 0), e(0, 1), e(1, 1)])
    assert rel.coefficients in ((1, 1, -1), (-1, -1, 1))


def test_reduce_pair_examples():
    c = e(1)
    a1, a2 = c.scale(2), c.scale(3)
    out = reduce_pair(ZZ, a1, a2, find_dependency(ZZ, [a1, a2]))
    assert out in (c, -c)
    assert reduce_pair(ZZ, c, c, DependencyRelation((1, -1))) == c
    a1, a2 = c.scale(6), c.scale(4)
    out = reduce_pair(ZZ, a1, a2, find_dependency(ZZ, [a1, a2]))
    assert out in (c.scale(2), c.scale(-2))


def test_reduce_pair_rejects_bad_relation():
    with pytest.raises(NotAPairRelation):
        reduce_pair(ZZ, e(1), e(2), DependencyRelation((1, -1)))
    with pytest.raises(NotAPairRelation):
        reduce_pair(ZZ, e(1), e(2), DependencyRelation((1, 0, -1)))


def test_reduce_tuple_examples():
    c = e(1)
    r = reduce_tuple(ZZ, [c.scale(2), c.scale(3)])
    assert len(r.basis) == 1 and r.basis[0] in (c, -c)
    assert [abs(row[0]) for row in r.expression] == [2, 3]
    r = reduce_tuple(ZZ, [e(1, 0), e(0, 1)])
    assert r.basis == (e(1, 0), e(0, 1)) and r.expression == ((1, 0), (0, 1))
    r = reduce_tuple(ZZ, [c, c.scale(2), c.scale(3)])
    assert len(r.basis) == 1
    assert r.reproduce() == [c, c.scale(2), c.scale(3)]


def test_reduce_tuple_divides_inside_group():
    # in Z[1/2] the pair (1, 3/2) reduces to 1/2, which is a member
    A = FDGroup(((Characteristic.make(0, {2: INF}), 1),))
    r = reduce_tuple(A, [e(1), e(F(3, 2))])
    assert len(r.basis) == 1 and r.reproduce() == [e(1), e(F(3, 2))]


def test_zero_element_rejected():
    with pytest.raises(ZeroElement):
        reduce_tuple(ZZ, [e(1), Element.from_dict({})])


@given(st.integers(0, 10_000))
def test_reduce_tuple_random(seed):
    rng = random.Random(seed)
    A = bounded_rank_group(rng, rng.randint(1, 4))
    xs = [random_member(rng, A, bound=20) for _ in range(rng.randint(1, 5))]
    r = reduce_tuple(A, xs)
    assert r.reproduce() == xs
    assert len(r.basis) == sympy_rank(xs) == rank_of(xs)
    assert find_dependency(A, list(r.basis)) is None


def test_split_identity_case():
    A = FDGroup(((Q, 1), (Z, 1)))
    a = Element.from_dict({(0, 0): 1, (1, 0): 1})
    b = Element.from_dict({(0, 0): 2, (1, 0): -1})
    c, d = split_infinite_dependency(A, a, b, 1, 1, 0, 0, 3)
    assert c == a + b and d == b
    assert c - d == a


@pytest.mark.parametrize("p", [3, 5, 7])
def test_split_shifted_case(p):
    A = FDGroup(((Q, 1), (Z, 1)))
    a = Element.from_dict({(0, 0): F(1, 3), (1, 0): 1})
    b = Element.from_dict({(0, 0): 5, (1, 0): -p})
    c, d = split_infinite_dependency(A, a, b, 1, 1, 0, 1, p)
    gamma, delta = 1, p - 1
    assert d == a.scale(delta) + b.scale(gamma)
    assert c.scale(gamma * p) - d == a
    assert c.scale(delta * p) - d.scale(p) == -b
    assert elem_height(A, c, p) == INF and elem_height(A, d, p) == 0
    assert is_p_height_independent(A, [c, d], p, 12)


def test_split_preconditions():
    A = FDGroup(((Q, 1), (Z, 1)))
    a = Element.from_dict({(0, 0): 1, (1, 0): 3})
    b = Element.from_dict({(0, 0): 1, (1, 0): -3})
    with pytest.raises(PreconditionViolated):
        split_infinite_dependency(A, a, b, 3, 1, 1, 1, 3)


def test_height_independence():
    A = FDGroup(((Z, 2),))
    assert is_p_height_independent(A, [e(1, 0), e(0, 1)], 2, 8)
    assert not is_p_height_independent(A, [e(1, 1), e(1, -1)], 2, 8)

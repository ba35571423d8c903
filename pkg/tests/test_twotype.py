import json
import random

import jsonschema
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tfab.characteristics import INF, Characteristic
from tfab.errors import InvalidTwoType
from tfab.generators import random_two_type
from tfab.groups import (Element, FDGroup, MixedGroup, PadicBlock, elem_height, padic_chi)
from tfab.padic import Ladder, parse_ladder, realize_ladder
from tfab.schemas import TWOTYPE
from tfab.twotype import (FiniteLadder, IndepFinite, IndepWithInfinite, SplitInfinite, TwoType,
                          classify_pair, hnf2, realize_two_type, validate_two_type)

Z, Q = Characteristic.zero(), Characteristic.top()


def test_rank_one_pair():
    A = FDGroup(((Z, 1),))
    c = Element.unit(0, 0)
    tt = classify_pair(A, c.scale(2), c.scale(3))
    assert tt.rank == 1 and tt.char_single == Z
    assert tt.expression == ((2,), (3,))


def test_integer_and_rational_coordinates():
    A = FDGroup(((Z, 1), (Q, 1)))
    tt = classify_pair(A, Element.unit(0, 0), Element.unit(1, 0))
    assert tt.rank == 2
    assert tt.locals == ()
    assert tt.default == IndepWithInfinite("b", 0)
    assert abs(tt.expression[0][0] * tt.expression[1][1]
               - tt.expression[0][1] * tt.expression[1][0]) == 1


def test_planted_ladder_is_recovered():
    L = parse_ladder("0,0; 2:1,1; 5:1,2", 3)
    pair = realize_ladder(L, 12)
    # the free part is 3-divisible so only the block decides 3-heights
    free = Characteristic.make(0, {3: INF})
    G = MixedGroup((PadicBlock(3, 12, 2),), FDGroup(((free, 2),)))
    x = Element.from_dict({(0, 0): 1, (1, 0): pair.a[0].residue, (1, 1): pair.a[1].residue})
    y = Element.from_dict({(0, 1): 1, (1, 0): pair.b[0].residue, (1, 1): pair.b[1].residue})
    tt = classify_pair(G, x, y)
    assert tt.rank == 2
    loc = tt.local(3)
    assert isinstance(loc, FiniteLadder) and loc.ladder.steps == L.steps
    assert padic_chi(3)(3) == 0


def test_ladder_validation():
    good = TwoType.make(2, [[1, 0], [0, 1]], None,
                        {3: FiniteLadder(Ladder(3, 0, 0, ((2, 1, 1), (5, 1, 2)), False))},
                        IndepFinite(0, 0))
    assert validate_two_type(good) == (True, [])
    for steps in (((2, 1, 1), (2, 1, 2)), ((2, 0, 2),)):
        bad = TwoType.make(2, [[1, 0], [0, 1]], None,
                           {3: FiniteLadder(Ladder(3, 0, 0, steps, False))}, IndepFinite(0, 0))
        ok, diags = validate_two_type(bad)
        assert not ok and diags


def test_non_unimodular_expression_rejected():
    tt = TwoType.make(2, [[2, 0], [0, 1]], None, {}, IndepFinite(0, 0))
    assert not validate_two_type(tt)[0]
    with pytest.raises(InvalidTwoType):
        realize_two_type(tt, 16)


def test_realize_rank_one():
    chi = Characteristic.parse("(0; 2:3)")
    r = realize_two_type(TwoType.make(1, [[1], [1]], chi), 16)
    assert r.carrier.rational.summands == ((chi, 1),)
    assert r.x == r.y == r.witnesses[0]


def test_realize_plain_free_pair():
    r = realize_two_type(TwoType.make(2, [[1, 0], [0, 1]], None, {}, IndepFinite(0, 0)), 16)
    assert r.carrier.padic_blocks == ()
    assert r.carrier.rational.summands == ((Z, 2),)
    assert r.x == Element.unit(0, 0) and r.y == Element.unit(0, 1)


def test_mixed_carrier_roundtrip():
    tt = TwoType.make(2, [[1, 1], [0, 1]], None, {
        3: FiniteLadder(parse_ladder("0,1; 3:1,1; 6:1,2", 3)),
        5: IndepWithInfinite("a", 2),
    }, IndepFinite(0, 0))
    assert validate_two_type(tt)[0], validate_two_type(tt)[1]
    r = realize_two_type(tt, 16)
    assert classify_pair(r.carrier, r.x, r.y) == tt


def test_split_case_roundtrip():
    tt = TwoType.make(2, [[1, 0], [0, 1]], None, {7: SplitInfinite(1, 2, 3, -2)},
                      IndepWithInfinite("b", 0))
    r = realize_two_type(tt, 12)
    assert classify_pair(r.carrier, r.x, r.y) == tt
    assert elem_height(r.carrier, r.witnesses[0], 7) == 1


def test_hnf_is_unimodular():
    H, U = hnf2([[4, 6], [2, 5]])
    det = U[0][0] * U[1][1] - U[0][1] * U[1][0]
    assert abs(det) == 1
    assert H[1][0] == 0 and H[0][0] > 0


@given(st.integers(0, 100_000))
def test_realize_classify_roundtrip(seed):
    tt = random_two_type(random.Random(seed))
    assert validate_two_type(tt)[0]
    r = realize_two_type(tt, 20)
    assert classify_pair(r.carrier, r.x, r.y) == tt


@given(st.integers(0, 100_000))
def test_json_roundtrip_and_schema(seed):
    tt = random_two_type(random.Random(seed))
    obj = json.loads(json.dumps(tt.to_json()))
    jsonschema.validate(obj, TWOTYPE)
    assert TwoType.from_json(obj) == tt

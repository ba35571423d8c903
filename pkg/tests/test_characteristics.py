import pytest
from hypothesis import given
from hypothesis import strategies as st

from tfab.characteristics import (INF, Characteristic, HType, char_equiv, char_shift, htype_of,
                                  parse_characteristic, parse_htype)
from tfab.errors import ParseError, SemanticError, ShiftAtInfinity, ShiftBelowZero

C = Characteristic.parse
PRIMES = [2, 3, 5, 7, 11]


@st.composite
def chars(draw):
    default = draw(st.sampled_from([0, INF]))
    primes = draw(st.lists(st.sampled_from(PRIMES), unique=True, max_size=4))
    vals = {p: draw(st.one_of(st.just(INF), st.integers(0, 6))) for p in primes}
    return Characteristic.make(default, vals)


@pytest.mark.parametrize("x, y, want", [
    ("(0;)", "(inf;)", "(0;)"),
    ("(0; 2:inf, 3:4)", "(0; 3:1, 5:2)", "(0; 3:1)"),
    ("(inf; 2:0)", "(inf; 3:0)", "(inf; 2:0, 3:0)"),
])
def test_meet_examples(x, y, want):
    assert C(x) & C(y) == C(want)


@pytest.mark.parametrize("x, y, want", [
    ("(0;)", "(inf;)", "(inf;)"),
    ("(0; 2:3)", "(0; 2:5)", "(0; 2:5)"),
    ("(inf; 3:1)", "(0; 3:2)", "(inf; 3:2)"),
])
def test_join_examples(x, y, want):
    assert C(x) | C(y) == C(want)


def test_order_examples():
    assert C("(0;)").leq(C("(inf; 2:7)"))
    assert not C("(0; 2:3)").leq(C("(0; 2:2)"))
    assert not C("(inf;)").leq(C("(inf; 2:7)"))


def test_equivalence_examples():
    assert char_equiv(C("(0; 2:5)"), C("(0;)"))
    assert not char_equiv(C("(0; 2:inf)"), C("(0;)"))
    assert not char_equiv(C("(0;)"), C("(inf;)"))


def test_htype_examples():
    assert htype_of(C("(0; 2:7, 3:inf)")) == HType.make(0, [3])
    assert htype_of(C("(inf; 5:0)")) == HType.make(INF, [5])
    assert htype_of(C("(0;)")) == HType.make(0)
    bottom = HType.make(0)
    assert bottom.meet(HType.make(INF, [2, 3])) == bottom
    assert HType.make(0, [2]).meet(HType.make(0, [3])) == bottom
    assert HType.make(0, [2]).leq(HType.make(INF))


def test_shift():
    assert char_shift(C("(0;)"), 2, 3) == C("(0; 2:3)")
    assert char_shift(C("(0; 2:3)"), 2, -3) == C("(0;)")
    with pytest.raises(ShiftBelowZero):
        char_shift(C("(0;)"), 2, -1)
    with pytest.raises(ShiftAtInfinity):
        char_shift(C("(0; 2:inf)"), 2, 1)


@pytest.mark.parametrize("text, err", [
    ("(0; 2:0)", SemanticError),
    ("(0; 4:1)", SemanticError),
    ("(0; 3:1, 2:1)", SemanticError),
    ("(1;)", ParseError),
    ("0; 2:1", ParseError),
    ("(0; 2)", ParseError),
])
def test_parse_errors(text, err):
    with pytest.raises(err):
        parse_characteristic(text)


def test_htype_parse_roundtrip():
    t = parse_htype("[inf; 2, 7]")
    assert str(t) == "[inf; 2, 7]"
    with pytest.raises(SemanticError):
        parse_htype("[0; 3, 2]")


@given(chars())
def test_print_parse_roundtrip(x):
    assert C(str(x)) == x


@given(chars(), chars(), chars())
def test_lattice_laws(x, y, z):
    assert x & y == y & x and x | y == y | x
    assert (x & y) & z == x & (y & z)
    assert x & (y | z) == (x & y) | (x & z)
    assert x & (x | y) == x and x | (x & y) == x
    for p in PRIMES + [13]:
        assert (x & y)(p) == min(x(p), y(p))
        assert (x | y)(p) == max(x(p), y(p))


@given(chars(), chars())
def test_order_matches_meet(x, y):
    assert x.leq(y) == ((x & y) == x)


@given(chars(), chars())
def test_htype_is_lattice_hom(x, y):
    assert htype_of(x & y) == htype_of(x) & htype_of(y)
    assert htype_of(x | y) == htype_of(x) | htype_of(y)
    if x.leq(y):
        assert htype_of(x).leq(htype_of(y))

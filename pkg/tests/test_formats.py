import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tfab.acceptance import random_workspace
from tfab.characteristics import INF, Characteristic
from tfab.errors import ParseError, SemanticError
from tfab.formats import (Workspace, format_workspace, parse_element_file, parse_group_file,
                          parse_workspace)
from tfab.groups import OMEGA, Element, FDGroup, MixedGroup


def test_free_group():
    G = parse_group_file("group A\nsummand (0;) rank=2\n")
    assert G == FDGroup(((Characteristic.zero(), 2),))


def test_omega_summand():
    G = parse_group_file("group A\nsummand (0; 2:inf) rank=omega\n")
    assert G.summands == ((Characteristic.make(0, {2: INF}), OMEGA),)


def test_padic_block():
    G = parse_group_file("group A\nsummand (0;) rank=1\npadic p=3 precision=24\n")
    assert isinstance(G, MixedGroup) and G.padic_blocks[0].copies == 2


def test_element_file():
    ws = parse_workspace("group A\nsummand (0; 2:3) rank=1\n")
    e = parse_element_file("# a comment\nelem x in A\ncoord 0.0 = 3/2\n", ws)
    assert e == Element.unit(0, 0, Fraction(3, 2))
    assert ws.elements["x"] == ("A", e)


@pytest.mark.parametrize("text, err, line", [
    ("group A\nsummand (0; 2:0) rank=1\n", SemanticError, 2),
    ("group A\nsummand (0;) rank=0\n", ParseError, 2),
    ("group A\nsummand (0;) rank=1\npadic p=4 precision=5\n", SemanticError, 3),
    ("group A\nsummand (0;) rank=1\nelem x in A\ncoord 0.0 = 1/2\n", SemanticError, 3),
    ("group A\nsummand (0;) rank=1\nelem x in B\n", SemanticError, 3),
    ("group A\nsumand (0;) rank=1\n", ParseError, 2),
    ("coord 0.0 = 1\n", ParseError, 1),
])
def test_errors_carry_position(text, err, line):
    with pytest.raises(err) as info:
        parse_workspace(text)
    assert info.value.line == line


def test_duplicate_names():
    with pytest.raises(SemanticError):
        parse_workspace("group A\nsummand (0;) rank=1\ngroup A\nsummand (inf;) rank=1\n")


def test_canonical_roundtrip_is_byte_identical():
    text = ("group A\nsummand (0; 2:inf) rank=omega\nsummand (inf; 3:1) rank=2\n"
            "padic p=5 precision=12 copies=2\n\nelem x in A\ncoord 0.0 = 7\ncoord 1.1 = -1/3\n")
    assert format_workspace(parse_workspace(text)) == text


@given(st.integers(0, 100_000))
def test_random_roundtrip(seed):
    ws = random_workspace(random.Random(seed))
    text = format_workspace(ws)
    back = parse_workspace(text)
    assert back.groups == ws.groups and back.elements == ws.elements
    assert format_workspace(back) == text


def test_workspace_lookup():
    ws = Workspace()
    with pytest.raises(SemanticError):
        ws.group("nope")

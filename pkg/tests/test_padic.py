import random

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from tfab.errors import InsufficientPrecision, InvalidLadder, MixedPrecision, MixedPrime
from tfab.generators import mutate_ladder, random_canonical_ladder, random_residue_pair
from tfab.padic import (AtLeast, Exact, Ladder, TruncatedPAdic, check_all_rungs,
                        check_unique_dependency, coprime_pairs, extract_ladder, padic_arith,
                        parse_ladder, proportional_mod, realize_ladder, valuation,
                        vector_combine, vector_valuation, verify_realization)


def vec(p, N, *xs):
    return [TruncatedPAdic(p, N, x) for x in xs]


@pytest.mark.parametrize("residue, want", [(18, Exact(2)), (0, AtLeast(5)), (1, Exact(0))])
def test_valuation_examples(residue, want):
    assert valuation(TruncatedPAdic(3, 5, residue)) == want


def test_arith_and_digits():
    x, y = TruncatedPAdic(3, 4, 80), TruncatedPAdic(3, 4, 2)
    assert padic_arith(x, y, "add").residue == 1
    assert padic_arith(x, y, "sub").residue == 78
    assert padic_arith(x, 2, "scale").residue == 79
    assert TruncatedPAdic(3, 4, 5).digits() == [2, 1, 0, 0]
    with pytest.raises(MixedPrime):
        padic_arith(x, TruncatedPAdic(5, 4, 1), "add")
    with pytest.raises(MixedPrecision):
        padic_arith(x, TruncatedPAdic(3, 5, 1), "add")


def test_indeterminate_comparisons():
    assert AtLeast(5).exceeds(3) is True
    assert AtLeast(5).exceeds(7) is None
    assert Exact(2).exceeds(2) is False


def test_single_step_example():
    pair = realize_ladder(parse_ladder("0,0; 2:1,1", 3), 8)
    a, b = pair.a, pair.b
    assert vector_valuation(a) == Exact(0) and vector_valuation(b) == Exact(0)
    assert vector_valuation(vector_combine(1, a, 1, b)) == Exact(2)
    assert vector_valuation(vector_combine(2, a, 1, b)) == Exact(0)
    assert vector_valuation(vector_combine(1, a, 2, b)) == Exact(0)


def test_two_step_example():
    L = parse_ladder("0,0; 1:1,1; 3:1,2", 3)
    assert L.is_valid()
    assert not proportional_mod((1, 2), (1, 1), 3)
    pair = realize_ladder(L, 10)
    assert vector_valuation(vector_combine(1, pair.a, 1, pair.b)) == Exact(1)
    assert vector_valuation(vector_combine(4, pair.a, 7, pair.b)) == Exact(3)
    assert verify_realization(pair)["ok"]
    assert extract_ladder(pair.a, pair.b, 9) == L


def test_empty_ladder():
    a, b = vec(5, 8, 1, 0), vec(5, 8, 0, 1)
    L = extract_ladder(a, b, 7)
    assert L.steps == () and not L.infinite
    reports = check_all_rungs(a, b)
    assert all(r.passed for r in reports) and not reports[0].raising


@pytest.mark.parametrize("text", ["0,0; 2:1,1; 2:1,2", "0,0; 2:0,2"])
def test_invalid_ladders(text):
    L = parse_ladder(text, 3)
    assert not L.is_valid()
    with pytest.raises(InvalidLadder):
        realize_ladder(L, 12)


def test_proportional_step_rejected():
    # (2,2) is proportional to the accumulated pair (1,1) mod 3
    L = Ladder(3, 0, 0, ((2, 1, 1), (5, 2, 2)), False)
    assert not L.is_valid()


def test_valid_two_step_with_gap():
    assert Ladder(3, 0, 0, ((2, 1, 1), (5, 1, 2)), False).is_valid()


def test_precision_guard():
    with pytest.raises(InsufficientPrecision):
        realize_ladder(parse_ladder("0,0; 6:1,1", 3), 6)


def test_coprime_pairs():
    assert coprime_pairs(3) == [(1, 1), (1, 2), (2, 1)]
    assert (2, 4) not in coprime_pairs(5) and (1, 4) in coprime_pairs(5)


@given(st.integers(0, 10_000), st.sampled_from([3, 5, 7]))
def test_realize_extract_roundtrip(seed, p):
    rng = random.Random(seed)
    L = random_canonical_ladder(rng, p)
    pair = realize_ladder(L, 24)
    assert verify_realization(pair)["ok"]
    assert extract_ladder(pair.a, pair.b, 23) == L


@given(st.integers(0, 10_000), st.sampled_from(["increase", "coprime", "proportional"]))
def test_mutants_rejected(seed, how):
    rng = random.Random(seed)
    L = random_canonical_ladder(rng, 5)
    bad = mutate_ladder(rng, L, how)
    with pytest.raises(InvalidLadder):
        realize_ladder(bad, 24)


@given(st.integers(0, 10_000), st.sampled_from([2, 3, 5]))
def test_unique_raising_class(seed, p):
    rng = random.Random(seed)
    a, b = random_residue_pair(rng, p, 12)
    va, vb = vector_valuation(a), vector_valuation(b)
    assume(va.exact and vb.exact)
    if vb < va:
        a, b = b, a
    for r in check_all_rungs(a, b):
        assert r.passed and r.classes <= 1


def test_single_level_report_json():
    pair = realize_ladder(parse_ladder("0,0; 2:1,1", 3), 8)
    rep = check_unique_dependency(pair.a, pair.b, 0)
    js = rep.to_json()
    assert js["verdict"] == "PASS" and rep.classes == 1

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from orbistring.loops import LoopCombination
from orbistring.words import OrbifoldSignature, SignatureMismatch, normalize

SIG = OrbifoldSignature((3, 4))
WORDS = [normalize(raw, SIG) for raw in ([], [(1, 1)], [(2, 1)], [(1, 1), (2, 1)], [(1, 2), (2, 3)])]

combos = st.lists(
    st.tuples(st.sampled_from(WORDS), st.fractions(min_value=-5, max_value=5, max_denominator=4)),
    max_size=6,
).map(lambda ts: LoopCombination(ts, SIG))
scalars = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@given(combos, combos, combos)
def test_addition_is_associative_and_commutative(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x


@given(combos, scalars, scalars)
def test_scalar_action(x, a, b):
    assert x.scale(a + b) == x.scale(a) + x.scale(b)
    assert x.scale(a * b) == x.scale(a).scale(b)
    assert x - x == LoopCombination.zero(SIG)


@given(combos)
def test_text_and_json_round_trip(x):
    assert LoopCombination.parse(x.format(), SIG) == x
    assert LoopCombination.from_json(x.to_json()) == x


def test_cancellation_prunes_terms():
    w = WORDS[3]
    x = LoopCombination([(w, 1), (w, -1), (WORDS[1], 2)], SIG)
    assert len(x) == 1 and x.coefficient(w) == 0


def test_keys_are_normalized():
    x = LoopCombination.from_raw([(1, [(2, 1), (1, 1)]), (1, [(1, 1), (2, 1)])], SIG)
    assert x.terms == {WORDS[3]: 2}


def test_formatting():
    x = LoopCombination([(WORDS[4], Fraction(-1, 2)), (WORDS[3], 3)], SIG)
    assert x.format() == "+3·ab -1/2·aabbb"
    assert LoopCombination.zero(SIG).format() == "0"
    assert LoopCombination.parse("−1·ab", SIG).coefficient(WORDS[3]) == -1


def test_signature_mismatch():
    other = OrbifoldSignature((2, 4))
    with pytest.raises(SignatureMismatch):
        LoopCombination.from_word(WORDS[1]) + LoopCombination.zero(other)
    with pytest.raises(TypeError):
        LoopCombination([("ab", 1)], SIG)

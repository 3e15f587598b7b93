"""The Tribonacci word, its finite prefixes Y_n and generating automata."""
import numpy as np
import pytest

from tribauto.numeration import tribonacci
from tribauto.word import (TRIBONACCI_MORPHISM, LearningError, Morphism, binary_dfao, binary_word,
                           dfao_map, dfao_outputs, finite_word, learn_dfao, morphic_prefix,
                           tribonacci_dfao, tribonacci_word, verify_dfao, word_at)


def test_printed_prefix():
    assert morphic_prefix(TRIBONACCI_MORPHISM, 13) == "0102010010201"
    assert morphic_prefix(TRIBONACCI_MORPHISM, 0) == ""


def test_prefixes_are_finite_words():
    for n in range(2, 21):
        assert morphic_prefix(TRIBONACCI_MORPHISM, tribonacci(n)) == finite_word(n)


@pytest.mark.parametrize("n, w", [(0, ""), (1, "2"), (2, "0"), (3, "01"), (4, "0102")])
def test_finite_word(n, w):
    assert finite_word(n) == w


def test_finite_word_lengths():
    assert all(len(finite_word(n)) == tribonacci(n) for n in range(2, 26))


def test_fixed_point(word):
    w = word[:100_000]
    img = TRIBONACCI_MORPHISM.apply(w[:60_000])
    assert np.array_equal(img[:100_000], w[:len(img[:100_000])])


def test_morphism_must_be_prolongable():
    with pytest.raises(ValueError):
        Morphism({0: (1, 0), 1: (0,)})


def test_dfao_has_three_states(tr):
    assert tr.num_states == 3
    assert sorted(int(x) for x in tr.outputs) == [0, 1, 2]


@pytest.mark.parametrize("n, letter", [(0, 0), (1, 1), (2, 0), (3, 2), (12, 1)])
def test_word_at(tr, n, letter):
    assert word_at(tr, n) == letter


def test_dfao_agrees_to_a_million(tr, word):
    assert verify_dfao(tr, word[:1_000_000]) is None


def test_binary_projection():
    b = binary_dfao()
    printed = "0101010010101010101001010101"
    assert "".join(map(str, dfao_outputs(b, len(printed)))) == printed
    assert np.array_equal(dfao_outputs(b, 100_000), binary_word(100_000))
    assert word_at(b, 1) == 1


def test_map_identity_and_constant(tr):
    same = dfao_map(tr, {0: 0, 1: 1, 2: 2})
    assert np.array_equal(dfao_outputs(same, 5000), dfao_outputs(tr, 5000))
    const = dfao_map(tr, lambda a: 7)
    assert const.num_states == 1


def test_learning_window_too_long(ns):
    with pytest.raises(LearningError):
        learn_dfao(tribonacci_word(50), ns)


def test_learning_another_morphic_word(ns):
    # the coding 0 -> 1, 1 -> 0, 2 -> 0 of the fixed point is also automatic
    m = Morphism({0: (0, 1), 1: (0, 2), 2: (0,)}, coding={0: 1, 1: 0, 2: 0})
    w = np.asarray([int(c) for c in morphic_prefix(m, 50_000)])
    d = learn_dfao(w, ns)
    assert verify_dfao(d, w) is None
    assert np.array_equal(w, 1 - binary_word(50_000))


def test_tribonacci_word_is_read_only():
    w = tribonacci_word(100)
    with pytest.raises(ValueError):
        w[0] = 5
    assert tribonacci_dfao() is tribonacci_dfao()

"""Tribonacci numbers, representations and the numeration-system loader."""
import itertools
import re

import numpy as np
import pytest

from tribauto.automata import complement, exists, language_equal, product, rename
from tribauto.corpus import check_addition
from tribauto.numeration import (ALPHA, NsdError, addition_dfa, base2_system, builtin_path,
                                 canonical_addition_dfa, canonical_rep, is_canonical,
                                 less_than_dfa, load_numeration, tribonacci, tribonacci_system,
                                 value_of, zip_values)


@pytest.mark.parametrize("n, t", [(0, 0), (1, 1), (2, 1), (7, 24), (16, 5768)])
def test_tribonacci_table(n, t):
    assert tribonacci(n) == t


def test_tribonacci_no_overflow():
    t = [tribonacci(n) for n in range(95, 98)]
    assert tribonacci(98) == sum(t)
    assert tribonacci(98) > 2 ** 64


def test_growth_ratio():
    for n in range(40, 80):
        assert abs(tribonacci(n) / tribonacci(n - 1) - ALPHA) < 1e-10


@pytest.mark.parametrize("w, v", [("110110", 43), ("", 0), ("0000", 0), ("111", 7),
                                  ("1", 1), ("10", 2), ("100", 4)])
def test_value_of(w, v):
    assert value_of(w) == v


@pytest.mark.parametrize("n, w", [(43, "110110"), (0, ""), (1, "1"), (3, "11"), (7, "1000")])
def test_canonical_rep(n, w):
    assert canonical_rep(n) == w


@pytest.mark.parametrize("w, ok", [("110110", True), ("111", False), ("01", False),
                                   ("", True), ("11011", True), ("1110", False)])
def test_is_canonical(w, ok):
    assert is_canonical(w) is ok


def _canonical_language(max_len):
    pat = re.compile(r"(?:(?:1|11)(?:0|01|011)*)?")
    for k in range(max_len + 1):
        for bits in itertools.product("01", repeat=k):
            w = "".join(bits)
            if pat.fullmatch(w):
                yield w


def test_canonical_language_is_a_bijection():
    # every value below T_20 has exactly one canonical word of length <= 18
    seen = {}
    for w in _canonical_language(18):
        v = value_of(w)
        assert v not in seen
        seen[v] = w
    bound = tribonacci(20)
    assert set(seen) == set(range(bound))
    assert all(canonical_rep(n) == seen[n] for n in range(bound))


def test_round_trip_to_a_million():
    assert all(value_of(canonical_rep(n)) == n for n in range(0, 1_000_001, 7))


def test_radix_order_is_numeric_order():
    words = [w for w in _canonical_language(12)]
    padded = sorted(w.rjust(12, "0") for w in words)
    vals = [value_of(w) for w in padded]
    assert vals == sorted(vals)


def test_zip_examples(ns):
    assert zip_values((9, 16)) == [(0, 1), (1, 0), (0, 0), (1, 1), (0, 1)]
    assert zip_values((0, 0)) == []
    assert zip_values((4, 2, 6)) == [(1, 0, 1), (0, 1, 1), (0, 0, 0)]


def test_raw_addition_table():
    a = addition_dfa()
    assert a.num_states == 44 and a.initial == 1
    assert a.accepting[1] and not a.accepting[0]
    assert (a.delta[0] == 0).all()
    assert a.accepts_columns([(1, 0, 1), (0, 1, 1), (0, 0, 0)])
    assert a.accepts_columns([])


def test_raw_addition_accepts_non_canonical():
    # 111 = 7 and 1000 = 7 as well; 7 + 0 = 7 written both ways
    a = addition_dfa()
    cols = list(zip((0, 1, 1, 1), (0, 0, 0, 0), (1, 0, 0, 0)))
    assert a.accepts_columns(cols)


def test_canonical_addition_state_count():
    a = canonical_addition_dfa()
    assert a.num_states == 150
    assert a.live_count() == 149
    assert a.accepts(4, 2, 6)


def test_canonical_addition_rejects_111(ns):
    a = canonical_addition_dfa()
    cols = list(zip((0, 1, 1, 1), (0, 0, 0, 0), (1, 0, 0, 0)))
    assert not a.accepts_columns(cols)


def test_addition_padding_closure():
    a = canonical_addition_dfa()
    for x, y in [(0, 0), (5, 9), (100, 37)]:
        cols = tribonacci_system().zip((x, y, x + y))
        assert a.accepts_columns([(0, 0, 0)] * 3 + cols)


def test_addition_small_exhaustive():
    res = check_addition(addition_dfa(), tribonacci_system(), bound=300, samples=20,
                         sample_pairs=200)
    assert res.exact and res.sampled_rejected


def test_less_than():
    lt = less_than_dfa()
    assert lt.accepts(2, 4)
    for x in range(0, 200, 3):
        for y in range(0, 200, 5):
            assert lt.accepts(x, y) == (x < y)


def test_less_than_equals_derived_version(ns):
    # x < y  iff  x + d = y for some d > 0
    positive = complement(ns.constant(0, "d"))
    shifted = rename(ns.addition_relation(), {"y": "d", "z": "y"})
    derived = exists(product(shifted, positive, "and"), "d")
    assert language_equal(derived, ns.less_than_relation())


def test_shipped_file_matches_builtin():
    loaded = load_numeration(builtin_path("tribonacci"))
    t = tribonacci_system()
    assert np.array_equal(loaded.addition.delta, t.addition.delta)
    assert np.array_equal(loaded.less_than.delta, t.less_than.delta)


def test_unknown_section_is_a_parse_error():
    text = builtin_path("base2").read_text() + "\n[bogus]\n"
    with pytest.raises(NsdError) as e:
        load_numeration(text)
    assert e.value.line is not None


def test_bad_symbol_reports_position():
    text = builtin_path("base2").read_text().replace("0 [0,0,0] 0", "0 [0,2,0] 0", 1)
    with pytest.raises(NsdError) as e:
        load_numeration(text)
    assert e.value.line is not None and e.value.column is not None


def test_base2_addition():
    b2 = base2_system()
    assert [b2.value_of(b2.rep(n)) for n in range(50)] == list(range(50))
    res = check_addition(b2.addition, b2, bound=300, samples=20, sample_pairs=200)
    assert res.exact and res.sampled_rejected

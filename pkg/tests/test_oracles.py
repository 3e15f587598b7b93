"""Brute-force string algorithms, checked against naive definitions on short prefixes."""
import numpy as np
import pytest

from tribauto.corpus.oracles import (border_scan, least_periods, occurrence_count, oracle_scan,
                                     palindrome_lengths, palindromic_prefixes, parikh,
                                     parikh_table, power_orders, power_positions, prefix_function,
                                     quasiperiod_lengths, runs, subword_complexity, z_array)
from tribauto.numeration import tribonacci
from tribauto.word import morphic_prefix, TRIBONACCI_MORPHISM

S = morphic_prefix(TRIBONACCI_MORPHISM, 400)


def _is_power(w, k):
    n = len(w) // k
    return len(w) % k == 0 and n > 0 and w == w[:n] * k


def test_parikh_of_printed_prefix():
    assert parikh(13) == (7, 4, 2)
    t = parikh_table(200)
    assert all(tuple(t[n]) == tuple(S[:n].count(c) for c in "012") for n in range(201))


def test_least_period_examples():
    lp = least_periods(300)
    assert lp[2] == 2
    for n in range(1, 120):
        want = next(p for p in range(1, n + 1) if all(S[i] == S[i + p] for i in range(n - p)))
        assert lp[n] == want


def test_z_and_prefix_functions():
    w = np.array([int(c) for c in S[:200]])
    z = z_array(w)
    pi = prefix_function(w)
    for i in range(1, 200):
        k = 0
        while i + k < 200 and S[k] == S[i + k]:
            k += 1
        assert z[i] == k
    for i in range(200):
        best = max((k for k in range(i + 1) if S[:k] == S[i + 1 - k:i + 1]), default=0)
        assert pi[i] == best


def test_runs_match_naive():
    w = np.array([int(c) for c in S])
    for p in (1, 2, 4, 7):
        r = runs(w, p)
        for i in range(0, len(S) - p, 13):
            k = 0
            while i + k + p < len(S) and S[i + k] == S[i + k + p]:
                k += 1
            assert r[i] == k


def test_square_orders():
    orders = power_orders(5000, 400, 2)
    naive = {n for n in range(1, 60) for i in range(len(S) - 2 * n)
             if S[i:i + n] == S[i + n:i + 2 * n]}
    assert {o for o in orders if o < 60} == naive
    allowed = {tribonacci(n) for n in range(2, 20)} | {tribonacci(n) + tribonacci(n - 1)
                                                      for n in range(3, 20)}
    assert orders <= allowed


def test_power_positions_small():
    got = power_positions(40, 3)
    want = {(n, i) for n in range(1, 41) for i in range(41)
            if _is_power(S[i:i + 3 * n], 3)}
    assert got == want


def test_occurrence_count_small():
    for n in range(0, 80):
        want = sum(1 for i in range(n) for j in range(1, n) if i + 2 * j <= n
                   and _is_power(S[i:i + 2 * j], 2))
        assert occurrence_count(n, 2) == want


def test_palindromes():
    assert set(range(0, 30)) <= palindrome_lengths(400)
    pp = palindromic_prefixes(300)
    assert pp == {n for n in range(301) if S[:n] == S[:n][::-1]}


def test_quasiperiods_small():
    got = quasiperiod_lengths(30, 400)
    want = set()
    for n in range(1, 31):
        x = S[:n]
        covered = 0
        for i in range(len(S) - n + 1):
            if S[i:i + n] == x and i <= covered:
                covered = i + n
        if covered >= len(S) - n:
            want.add(n)
    assert got == want


def test_border_scan_small():
    unb, lyn = border_scan(30)
    naive_unb, naive_lyn = set(), set()
    for n in range(1, 31):
        facs = {S[i:i + n] for i in range(len(S) - n)}
        if any(all(f[:k] != f[-k:] for k in range(1, n)) for f in facs):
            naive_unb.add(n)
        # smaller than each of its proper suffixes
        if any(all(f < f[k:] for k in range(1, n)) for f in facs):
            naive_lyn.add(n)
    assert unb == naive_unb
    assert lyn == naive_lyn


def test_subword_complexity():
    for n in range(1, 40):
        assert subword_complexity(n) == len({S[i:i + n] for i in range(300 - n)}) == 2 * n + 1


@pytest.mark.parametrize("prop", ["squares", "cubes", "palindromes", "lyndon", "unbordered",
                                  "quasiperiod", "least_period", "parikh"])
def test_oracle_scan_dispatch(prop):
    assert oracle_scan(300, prop) is not None


def test_oracle_scan_unknown():
    with pytest.raises(ValueError):
        oracle_scan(10, "nonsense")

"""Brute-force scans over prefixes of the Tribonacci word.

Nothing here touches automata: each scan works on the letters produced by
iterating the morphism, so it can serve as an independent check on the
decision procedure.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..numeration import tribonacci
from ..word import tribonacci_word


def runs(w: np.ndarray, p: int) -> np.ndarray:
    """r[i] = length of the longest common prefix of w[i:] and w[i+p:], truncated at the end."""
    e = w[:-p] == w[p:]
    m = len(e)
    pos = np.where(e, m, np.arange(m))
    nxt = np.minimum.accumulate(pos[::-1])[::-1]
    return nxt - np.arange(m)


def z_array(w: np.ndarray) -> np.ndarray:
    """Z-function: z[j] = lcp(w, w[j:]), with z[0] = len(w)."""
    s = w.tolist()
    n = len(s)
    z = [0] * n
    if n:
        z[0] = n
    l = r = 0
    for j in range(1, n):
        k = min(r - j, z[j - l]) if j < r else 0
        while j + k < n and s[k] == s[j + k]:
            k += 1
        z[j] = k
        if j + k > r:
            l, r = j, j + k
    return np.array(z, dtype=np.int64)


def prefix_function(w: np.ndarray) -> np.ndarray:
    s = w.tolist()
    pi = [0] * len(s)
    k = 0
    for i in range(1, len(s)):
        while k and s[i] != s[k]:
            k = pi[k - 1]
        if s[i] == s[k]:
            k += 1
        pi[i] = k
    return np.array(pi, dtype=np.int64)


# -- repetitions ---------------------------------------------------------

def power_orders(length: int, max_order: int, power: int = 2) -> set[int]:
    """Orders p <= max_order of factors x^power (x of length p) inside the prefix."""
    w = tribonacci_word(length)
    need = (power - 1)
    return {p for p in range(1, max_order + 1) if (runs(w, p) >= need * p).any()}


def power_positions(bound: int, power: int = 2) -> set[tuple[int, int]]:
    """Pairs (order n, position i) with n, i <= bound and a power-th power of order n at i."""
    w = tribonacci_word(bound + power * bound + 2)
    out = set()
    for n in range(1, bound + 1):
        r = runs(w, n)[: bound + 1]
        out.update((n, int(i)) for i in np.flatnonzero(r >= (power - 1) * n))
    return out


def occurrence_count(length: int, power: int = 2) -> int:
    """Occurrences (i, j), j >= 1, of power-th powers x^power with |x| = j inside w[0..length-1]."""
    w = tribonacci_word(length)
    total = 0
    for j in range(1, length // power + 1):
        r = runs(w[:length], j)
        last = length - power * j  # start positions 0..last
        total += int((r[: last + 1] >= (power - 1) * j).sum())
    return total


def maximal_period_length(p: int, length: int | None = None) -> int:
    """Longest factor (seen in the prefix) having period p."""
    w = tribonacci_word(length or 40 * p + 200)
    return p + int(runs(w, p).max())


# -- palindromes -----------------------------------------------------------

def palindrome_lengths(length: int) -> set[int]:
    """Lengths of palindromic factors of the prefix (Manacher)."""
    s = tribonacci_word(length).tolist()
    t = [-1]
    for c in s:
        t += [c, -1]
    n = len(t)
    rad = [0] * n
    c = r = 0
    for i in range(n):
        k = min(rad[2 * c - i], r - i) if i < r else 0
        while i - k - 1 >= 0 and i + k + 1 < n and t[i - k - 1] == t[i + k + 1]:
            k += 1
        rad[i] = k
        if i + k > r:
            c, r = i, i + k
    best_odd = max(rad[i] for i in range(1, n, 2))
    best_even = max(rad[i] for i in range(0, n, 2))
    return {m for m in range(best_odd + 1) if m % 2} | {m for m in range(best_even + 1) if m % 2 == 0}


def palindromic_prefixes(bound: int) -> set[int]:
    w = tribonacci_word(bound)
    return {n for n in range(bound + 1) if np.array_equal(w[:n], w[:n][::-1])}


# -- periods, borders, Lyndon factors ----------------------------------------

def least_periods(length: int) -> np.ndarray:
    """lp[n] = least period of w[0..n-1] for 1 <= n <= length (lp[0] = 0)."""
    pi = prefix_function(tribonacci_word(length))
    lp = np.zeros(length + 1, dtype=np.int64)
    lp[1:] = np.arange(1, length + 1) - pi
    return lp


def power_prefixes(bound: int) -> set[int]:
    lp = least_periods(bound)
    return {n for n in range(1, bound + 1) if lp[n] < n and n % lp[n] == 0}


def quasiperiod_lengths(bound: int, length: int | None = None) -> set[int]:
    """n such that occurrences of w[0..n-1] cover the prefix with no gaps."""
    length = length or 50 * bound + 1000
    z = z_array(tribonacci_word(length))
    out = set()
    for n in range(1, bound + 1):
        occ = np.flatnonzero(z[: length - n + 1] >= n)
        if np.diff(occ).max(initial=0) <= n and occ[-1] >= length - 2 * n:
            out.add(n)
    return out


def _factor_window(n: int) -> int:
    """A start bound S such that every length-n factor occurs at some position < S."""
    w = tribonacci_word(60 * n + 200)
    first: dict[bytes, int] = {}
    for i in range(len(w) - n + 1):
        first.setdefault(w[i:i + n].tobytes(), i)
    s = max(first.values()) + 1
    if s > (len(w) - n) // 2:
        raise RuntimeError("factor window did not stabilise")
    return s


def border_scan(bound: int) -> tuple[set[int], set[int]]:
    """(lengths with an unbordered factor, lengths with a Lyndon factor), 1..bound.

    A factor x = w[i..i+n-1] has a border of length n-d exactly when
    d + lcp(w[i:], w[i+d:]) >= n; it is Lyndon when in addition every proper
    suffix is larger, decided by the letters at the first mismatch.  Sweeping
    d upwards settles length n = d+1 for all starts at once.
    """
    S = _factor_window(bound)
    w = tribonacci_word(S + 2 * bound + 2)
    reach = np.zeros(S, dtype=np.int64)
    bad = np.zeros(S, dtype=bool)
    starts = np.arange(S)
    unb, lyn = {1}, {1}
    for d in range(1, bound):
        z = np.minimum(runs(w, d)[:S], bound)
        np.maximum(reach, d + z, out=reach)
        bad |= w[starts + z + d] <= w[starts + z]
        n = d + 1
        ok = reach < n
        if ok.any():
            unb.add(n)
            if (ok & ~bad).any():
                lyn.add(n)
    return unb, lyn


# -- counting ----------------------------------------------------------------

def parikh(n: int) -> tuple[int, int, int]:
    """Letter counts of w[0..n-1]."""
    c = np.bincount(tribonacci_word(n), minlength=3)
    return int(c[0]), int(c[1]), int(c[2])


def parikh_table(bound: int) -> np.ndarray:
    """Rows (|w[0..n-1]|_0, |..|_1, |..|_2) for n = 0..bound."""
    w = tribonacci_word(bound)
    out = np.zeros((bound + 1, 3), dtype=np.int64)
    for c in range(3):
        out[1:, c] = np.cumsum(w == c)
    return out


def subword_complexity(n: int, length: int | None = None) -> int:
    w = tribonacci_word(length or 60 * n + 200)
    return len({w[i:i + n].tobytes() for i in range(len(w) - n + 1)})


@lru_cache(maxsize=None)
def _border_scan_cached(bound: int):
    return border_scan(bound)


def oracle_scan(length: int, prop: str):
    """Dispatch a named brute-force scan over the prefix of the given length."""
    if prop == "squares":
        return power_orders(length, length // 2, 2)
    if prop == "cubes":
        return power_orders(length, length // 3, 3)
    if prop == "palindromes":
        return palindrome_lengths(length)
    if prop == "unbordered":
        return _border_scan_cached(length)[0]
    if prop == "lyndon":
        return _border_scan_cached(length)[1]
    if prop == "quasiperiod":
        return quasiperiod_lengths(length)
    if prop == "least_period":
        return least_periods(length)
    if prop == "parikh":
        return parikh(length)
    raise ValueError(f"unknown property {prop!r}")


def tribonacci_set(bound: int, start: int = 2) -> set[int]:
    out, k = set(), start
    while tribonacci(k) <= bound:
        out.add(tribonacci(k))
        k += 1
    return out

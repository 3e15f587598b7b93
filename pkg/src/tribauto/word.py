"""Morphic words, the Tribonacci word and automata generating them."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Mapping

import numpy as np

from .automata import Dfao, minimize_dfao
from .numeration import NumerationSystem, tribonacci_system


@dataclass(frozen=True)
class Morphism:
    """A substitution prolongable on ``start``, optionally followed by a coding."""
    images: Mapping[int, tuple[int, ...]]
    start: int = 0
    coding: Mapping[int, int] | None = None
    alphabet: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not self.alphabet:
            object.__setattr__(self, "alphabet", tuple(sorted(self.images)))
        img = self.images[self.start]
        if not img or img[0] != self.start or len(img) < 2:
            raise ValueError("morphism must be prolongable on its start letter")
        for a, w in self.images.items():
            if any(c not in self.images for c in w):
                raise ValueError(f"image of {a} leaves the alphabet")

    def apply(self, word) -> np.ndarray:
        word = np.asarray(word, dtype=np.int64)
        k = max(self.images) + 1
        width = max(len(w) for w in self.images.values())
        table = np.full((k, width), -1, dtype=np.int64)
        for a, w in self.images.items():
            table[a, :len(w)] = w
        out = table[word].ravel()
        return out[out >= 0]


TRIBONACCI_MORPHISM = Morphism({0: (0, 1), 1: (0, 2), 2: (0,)})


def morphic_array(m: Morphism, length: int) -> np.ndarray:
    """First ``length`` letters of the coded fixed point, as an int array."""
    w = np.array([m.start], dtype=np.int64)
    while w.size < length:
        w = m.apply(w)
    w = w[:length]
    if m.coding is not None:
        lut = np.zeros(max(m.coding) + 1, dtype=np.int64)
        for a, b in m.coding.items():
            lut[a] = b
        w = lut[w]
    return w


def morphic_prefix(m: Morphism, length: int) -> str:
    return "".join(map(str, morphic_array(m, length).tolist()))


@lru_cache(maxsize=4)
def _tribonacci_cached(length: int) -> np.ndarray:
    a = morphic_array(TRIBONACCI_MORPHISM, length)
    a.setflags(write=False)
    return a


def tribonacci_word(length: int) -> np.ndarray:
    """Prefix of the Tribonacci word 0102010010201... as a read-only array."""
    # round up so repeated calls with nearby lengths share the cache
    size = 1 << max(10, (max(length, 1) - 1).bit_length())
    return _tribonacci_cached(size)[:length]


@lru_cache(maxsize=64)
def finite_word(n: int) -> str:
    """Y_0 = "", Y_1 = "2", Y_2 = "0", Y_3 = "01", Y_n = Y_{n-1} Y_{n-2} Y_{n-3}."""
    if n < 0:
        raise ValueError("n must be non-negative")
    base = ["", "2", "0", "01"]
    if n < 4:
        return base[n]
    ys = list(base)
    for _ in range(4, n + 1):
        ys.append(ys[-1] + ys[-2] + ys[-3])
    return ys[-1]


# ---------------------------------------------------------------------------
# automata for words

def dfao_outputs(d: Dfao, count: int, ns: NumerationSystem | None = None) -> np.ndarray:
    """Outputs of ``d`` on 0..count-1, reading greedy representations."""
    ns = ns or d.ns or tribonacci_system()
    rem = np.arange(count, dtype=np.int64)
    places = []
    k = 0
    while count and ns.place(k) < count:
        places.append(ns.place(k))
        k += 1
    q = np.full(count, d.initial, dtype=np.int64)
    for p in reversed(places):
        bit = (rem >= p).astype(np.int64)
        rem -= bit * p
        q = d.delta[q, bit]
    return d.outputs[q]


class LearningError(RuntimeError):
    pass


def learn_dfao(oracle: np.ndarray, ns: NumerationSystem, prefix_len: int = 10,
               suffix_len: int = 4) -> Dfao:
    """Infer a DFAO from a table of sequence values.

    A state is identified by the outputs seen after every short suffix.  The
    transition out of a state is read off any representative; disagreement
    between representatives means the suffix window was too short.
    Transitions never exercised by valid representations loop in place.
    """
    n_max = len(oracle)
    suffixes = [s for k in range(suffix_len + 1) for s in itertools.product((0, 1), repeat=k)]

    def sig(w):
        out = []
        for s in suffixes:
            bits = w + s
            if not ns.is_valid(bits):
                out.append(-1)
                continue
            v = ns.value_of(bits)
            if v >= n_max:
                raise LearningError("oracle too short for the learning window")
            out.append(int(oracle[v]))
        return tuple(out)

    states: dict[tuple, int] = {}
    outputs: list[int] = []
    trans: dict[tuple[int, int], int] = {}
    reps = [()]
    states[sig(())] = 0
    outputs.append(int(oracle[0]))
    frontier = [()]
    for _ in range(prefix_len):
        nxt = []
        for w in frontier:
            q = states[sig(w)]
            for b in (0, 1):
                wb = w + (b,)
                if not ns.is_valid(wb):
                    continue
                s = sig(wb)
                if s not in states:
                    states[s] = len(outputs)
                    outputs.append(int(oracle[ns.value_of(wb)]))
                    reps.append(wb)
                r = states[s]
                if trans.setdefault((q, b), r) != r:
                    raise LearningError(f"inconsistent transition from state {q} on {b}")
                nxt.append(wb)
        frontier = nxt
    delta = np.zeros((len(outputs), 2), dtype=np.int64)
    for q in range(len(outputs)):
        for b in (0, 1):
            delta[q, b] = trans.get((q, b), q)
    return minimize_dfao(Dfao(delta, outputs, 0, ns))


def verify_dfao(d: Dfao, oracle: np.ndarray) -> int | None:
    """First index where ``d`` disagrees with ``oracle``, or None."""
    got = dfao_outputs(d, len(oracle))
    bad = np.flatnonzero(got != oracle)
    return int(bad[0]) if bad.size else None


@lru_cache(maxsize=None)
def tribonacci_dfao(verify_to: int = 100_000) -> Dfao:
    """The 3-state DFAO for the Tribonacci word, learned and checked against the morphism."""
    ns = tribonacci_system()
    oracle = tribonacci_word(max(verify_to, 2048))
    d = learn_dfao(oracle, ns)
    bad = verify_dfao(d, oracle[:verify_to])
    if bad is not None:
        raise LearningError(f"learned automaton disagrees with the word at {bad}")
    return d


def dfao_map(d: Dfao, f: Mapping[int, int] | Callable[[int], int]) -> Dfao:
    fn = f.__getitem__ if isinstance(f, Mapping) else f
    outs = [fn(int(x)) for x in d.outputs]
    return minimize_dfao(Dfao(d.delta, outs, d.initial, d.ns))


def binary_dfao() -> Dfao:
    """b: the Tribonacci word with letters 1 and 2 merged."""
    return dfao_map(tribonacci_dfao(), lambda x: min(x, 1))


def binary_word(length: int) -> np.ndarray:
    return np.minimum(tribonacci_word(length), 1)


def word_at(d: Dfao, n: int) -> int:
    if d.ns is None:
        return d.output_of_bits(tribonacci_system().rep(n))
    return d[n]

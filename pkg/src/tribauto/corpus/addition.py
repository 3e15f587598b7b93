"""Exhaustive and sampled checks of an addition automaton on a box of inputs."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..automata import Dfa
from ..automata.core import _coreachable
from ..numeration import NumerationSystem


@dataclass
class AdditionCheck:
    bound: int
    pairs: int
    exact: bool            # accepts x + y, and only words of that value, for every pair
    sampled: int           # wrong sums evaluated directly
    sampled_rejected: bool
    witness: tuple | None = None


def digit_matrix(ns: NumerationSystem, values: np.ndarray, width: int) -> np.ndarray:
    """Row v holds the most-significant-first digits of values[v], left-padded to ``width``."""
    out = np.zeros((len(values), width), dtype=np.int64)
    for r, v in enumerate(values):
        bits = ns.rep(int(v))
        if bits:
            out[r, width - len(bits):] = bits
    return out


def _symbol_bits(a: Dfa) -> list[int]:
    r = a.arity
    return [r - 1 - a.tracks.index(t) for t in ("x", "y", "z")]


def accepted_sums(a: Dfa, ns: NumerationSystem, bound: int, width: int, chunk: int = 250):
    """For all x, y <= bound: every z below the top place with (x, y, z) accepted.

    Paths are followed for both z digits at once and pruned as soon as the
    state cannot reach acceptance, so only a handful survive per pair.
    Pairs are numbered x * (bound + 1) + y.
    """
    m = bound + 1
    D = digit_matrix(ns, np.arange(m), width)
    live = _coreachable(a.delta, a.accepting)
    parts = [_accepted_block(a, ns, D, live, x0, min(x0 + chunk, m), m, width)
             for x0 in range(0, m, chunk)]
    return np.concatenate([p for p, _ in parts]), np.concatenate([z for _, z in parts])


def _accepted_block(a, ns, D, live, x0, x1, m, width):
    bx, by, bz = _symbol_bits(a)
    places = [ns.place(k) for k in range(width)][::-1]
    # symbol of the (x, y) digits at each position, one row per pair of the block
    base = ((D[x0:x1, None, :] << bx) | (D[None, :m, :] << by)).reshape(-1, width)
    base = np.ascontiguousarray(base.T.astype(np.int32))
    S = a.delta.shape[1]
    delta = a.delta.astype(np.int32).ravel()
    pair = np.arange((x1 - x0) * m, dtype=np.int32)
    state = np.full(len(pair), a.initial, dtype=np.int32)
    z = np.zeros(len(pair), dtype=np.int32)
    for k in range(width):
        q = state * S + base[k][pair]
        nxt = np.stack([delta[q], delta[q | (1 << bz)]], axis=1).ravel()
        keep = np.flatnonzero(live[nxt])  # index 2i + d: path i extended by z digit d
        src = keep >> 1
        pair, state = pair[src], nxt[keep]
        z = z[src] + (keep & 1).astype(np.int32) * places[k]
    acc = a.accepting[state]
    return pair[acc].astype(np.int64) + x0 * m, z[acc].astype(np.int64)


def _run_triples(a: Dfa, Dx, Dy, Dz) -> np.ndarray:
    bx, by, bz = _symbol_bits(a)
    state = np.full(Dx.shape[0], a.initial, dtype=np.int64)
    for k in range(Dx.shape[1]):
        state = a.delta[state, (Dx[:, k] << bx) | (Dy[:, k] << by) | (Dz[:, k] << bz)]
    return a.accepting[state]


def check_addition(a: Dfa, ns: NumerationSystem, bound: int = 2000, samples: int = 100,
                   sample_pairs: int = 2000, seed: int = 0) -> AdditionCheck:
    """Exact on the whole box, by value: every canonical (x, y, x + y) is accepted, and
    every accepted z word (canonical or not) has value x + y.  Wrong sums are also
    evaluated directly on a random sample of pairs."""
    width = len(ns.rep(2 * bound)) + 1
    m = bound + 1
    witness = None
    D = digit_matrix(ns, np.arange(2 * m), width)
    for x0 in range(0, m, 100):
        x = np.repeat(np.arange(x0, min(x0 + 100, m)), m)
        y = np.tile(np.arange(m), len(x) // m)
        ok = _run_triples(a, D[x], D[y], D[x + y])
        if not ok.all():
            i = int(np.flatnonzero(~ok)[0])
            witness = (int(x[i]), int(y[i]), "sum rejected")
            break
    pair, z = accepted_sums(a, ns, bound, width)
    wrong = np.flatnonzero(z != pair // m + pair % m)
    if len(wrong) and witness is None:
        p = int(pair[wrong[0]])
        witness = (p // m, p % m, int(z[wrong[0]]))
    exact = witness is None

    # direct evaluation of sampled wrong sums on a random subset of pairs
    rng = np.random.default_rng(seed)
    xs = rng.integers(0, m, sample_pairs)
    ys = rng.integers(0, m, sample_pairs)
    top = ns.place(width - 1)
    off = rng.integers(1, top, (sample_pairs, samples))
    zs = (xs + ys)[:, None] + off
    zs = np.where(zs >= top, zs - top, zs)  # wrap into [0, top) and never hit x + y
    xs_, ys_, zs_ = np.repeat(xs, samples), np.repeat(ys, samples), zs.ravel()
    T = digit_matrix(ns, np.arange(top), width)
    acc = _run_triples(a, T[xs_], T[ys_], T[zs_])
    rejected = not acc.any()
    if not rejected and witness is None:
        i = int(np.flatnonzero(acc)[0])
        witness = (int(xs_[i]), int(ys_[i]), int(zs_[i]))
    return AdditionCheck(bound, m * m, exact, len(zs_), rejected, witness)

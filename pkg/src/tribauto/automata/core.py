"""Deterministic automata over tuple alphabets of bit columns.

A symbol of an r-track automaton is an integer in ``range(2**r)``; track ``i``
contributes bit ``r - 1 - i``, so the numeric order of symbols is the order of
bit columns read as binary numbers (``[0,0,1] < [0,1,0]``).

Automata that carry a numeration system (``ns``) follow one convention: the
language is a set of padded tuple representations, every track of every
accepted word is a valid representation (leading zeros allowed), and the
language is closed under adding or removing leading all-zero columns.  Boolean
operations, projection and renaming all preserve that convention.  Automata
with ``ns=None`` are plain word automata and no validity is imposed.
"""
from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

DEFAULT_BUDGET = 5_000_000

# frontier chunk for vectorized exploration (number of codes per batch)
_CHUNK = 1 << 17


class ResourceError(RuntimeError):
    """Raised when a construction exceeds the configured state budget."""

    def __init__(self, message: str, states: int = 0, label: str | None = None):
        super().__init__(message)
        self.states = states
        self.label = label


class TrackError(ValueError):
    pass


# ---------------------------------------------------------------------------
# peak-size bookkeeping

@dataclass
class Peak:
    states: int = 0

    def note(self, n: int) -> None:
        if n > self.states:
            self.states = n


_peak: contextvars.ContextVar[Peak | None] = contextvars.ContextVar("peak", default=None)
_budget: contextvars.ContextVar[int] = contextvars.ContextVar("budget", default=DEFAULT_BUDGET)


@contextlib.contextmanager
def track_peak():
    """Record the largest intermediate automaton built inside the block."""
    peak = Peak()
    token = _peak.set(peak)
    try:
        yield peak
    finally:
        _peak.reset(token)


@contextlib.contextmanager
def state_budget(n: int):
    token = _budget.set(int(n))
    try:
        yield
    finally:
        _budget.reset(token)


def _note(n: int) -> None:
    peak = _peak.get()
    if peak is not None:
        peak.note(n)


def _check_budget(n: int, what: str) -> None:
    limit = _budget.get()
    if n > limit:
        raise ResourceError(f"{what} exceeded the state budget ({n} > {limit})", states=n)


# ---------------------------------------------------------------------------
# symbols

def column_to_symbol(column: Sequence[int]) -> int:
    s = 0
    for b in column:
        s = (s << 1) | (1 if b else 0)
    return s


def symbol_to_column(sym: int, arity: int) -> tuple[int, ...]:
    return tuple((sym >> (arity - 1 - i)) & 1 for i in range(arity))


def format_column(column: Sequence[int]) -> str:
    return "[" + ",".join(str(int(b)) for b in column) + "]"


def _symbol_map(src: Sequence[str], dst: Sequence[str]) -> np.ndarray:
    """For each symbol over ``dst`` tracks, the symbol over ``src`` tracks it restricts to.

    Every name of ``src`` must occur in ``dst``.
    """
    r, m = len(src), len(dst)
    pos = {t: i for i, t in enumerate(dst)}
    syms = np.arange(1 << m, dtype=np.int64)
    out = np.zeros(1 << m, dtype=np.int64)
    for i, t in enumerate(src):
        bit = (syms >> (m - 1 - pos[t])) & 1
        out |= bit << (r - 1 - i)
    return out


# ---------------------------------------------------------------------------
# automata values

class Dfa:
    """Complete deterministic automaton.

    ``delta`` has shape ``(states, 2**arity)``; ``accepting`` is a boolean mask.
    """

    __slots__ = ("tracks", "delta", "accepting", "initial", "ns")

    def __init__(self, tracks: Iterable[str], delta, accepting, initial: int = 0, ns=None):
        tracks = tuple(tracks)
        if len(set(tracks)) != len(tracks):
            raise TrackError(f"duplicate track names {tracks}")
        delta = np.array(delta, dtype=np.int32, copy=True)
        if delta.ndim != 2 or delta.shape[1] != 1 << len(tracks):
            raise ValueError(f"transition table shape {delta.shape} does not match arity {len(tracks)}")
        if delta.size and (delta.min() < 0 or delta.max() >= delta.shape[0]):
            raise ValueError("transition target out of range")
        accepting = np.array(accepting, dtype=bool, copy=True).reshape(-1)
        if accepting.shape[0] != delta.shape[0]:
            raise ValueError("accepting mask has wrong length")
        if not 0 <= initial < delta.shape[0]:
            raise ValueError("initial state out of range")
        delta.setflags(write=False)
        accepting.setflags(write=False)
        self.tracks = tracks
        self.delta = delta
        self.accepting = accepting
        self.initial = int(initial)
        self.ns = ns

    # the arrays are read-only, so construction without copying is safe internally
    @classmethod
    def _raw(cls, tracks, delta, accepting, initial=0, ns=None) -> "Dfa":
        obj = cls.__new__(cls)
        delta = np.ascontiguousarray(delta, dtype=np.int32)
        accepting = np.ascontiguousarray(accepting, dtype=bool)
        delta.setflags(write=False)
        accepting.setflags(write=False)
        obj.tracks = tuple(tracks)
        obj.delta = delta
        obj.accepting = accepting
        obj.initial = int(initial)
        obj.ns = ns
        return obj

    @property
    def arity(self) -> int:
        return len(self.tracks)

    @property
    def num_states(self) -> int:
        return self.delta.shape[0]

    def __len__(self) -> int:
        return self.num_states

    def __repr__(self) -> str:
        return f"Dfa(tracks={list(self.tracks)}, states={self.num_states})"

    @classmethod
    def constant(cls, value: bool, ns=None) -> "Dfa":
        """Arity-0 automaton: a truth value."""
        return cls._raw((), np.zeros((1, 1), dtype=np.int32), [bool(value)], 0, ns)

    @property
    def truth(self) -> bool:
        if self.arity:
            raise TrackError("only arity-0 automata have a truth value")
        return bool(self.accepting[self.initial])

    def run(self, symbols: Iterable[int], state: int | None = None) -> int:
        q = self.initial if state is None else state
        d = self.delta
        for s in symbols:
            q = int(d[q, s])
        return q

    def accepts_symbols(self, symbols: Iterable[int]) -> bool:
        return bool(self.accepting[self.run(symbols)])

    def accepts_columns(self, columns: Iterable[Sequence[int]]) -> bool:
        return self.accepts_symbols(column_to_symbol(c) for c in columns)

    def accepts(self, *values: int) -> bool:
        """Membership of a tuple of naturals, in track order."""
        if self.ns is None:
            raise TrackError("value-level membership needs a numeration system")
        if len(values) != self.arity:
            raise TrackError(f"expected {self.arity} values, got {len(values)}")
        return self.accepts_columns(self.ns.zip(values))

    def dead_states(self) -> np.ndarray:
        return ~_coreachable(self.delta, self.accepting)

    def live_count(self) -> int:
        """Number of states from which an accepting state is reachable."""
        return int(_coreachable(self.delta, self.accepting).sum())

    def with_ns(self, ns) -> "Dfa":
        return Dfa._raw(self.tracks, self.delta, self.accepting, self.initial, ns)


class Dfao:
    """Single-track automaton with output; ``outputs[q]`` is the letter of state ``q``."""

    __slots__ = ("delta", "outputs", "initial", "ns")

    def __init__(self, delta, outputs, initial: int = 0, ns=None):
        delta = np.array(delta, dtype=np.int32, copy=True)
        outputs = np.array(outputs, dtype=np.int64, copy=True).reshape(-1)
        if delta.ndim != 2 or delta.shape[1] != 2 or outputs.shape[0] != delta.shape[0]:
            raise ValueError("a DFAO needs a (states, 2) table and one output per state")
        delta.setflags(write=False)
        outputs.setflags(write=False)
        self.delta = delta
        self.outputs = outputs
        self.initial = int(initial)
        self.ns = ns

    @property
    def num_states(self) -> int:
        return self.delta.shape[0]

    def __repr__(self) -> str:
        return f"Dfao(states={self.num_states}, alphabet={sorted(set(self.outputs.tolist()))})"

    @property
    def alphabet(self) -> list[int]:
        reach = _reachable_mask(self.delta, self.initial)
        return sorted(set(self.outputs[reach].tolist()))

    def output_of_bits(self, bits: Iterable[int]) -> int:
        q = self.initial
        for b in bits:
            q = int(self.delta[q, b])
        return int(self.outputs[q])

    def __getitem__(self, n: int) -> int:
        if self.ns is None:
            raise TrackError("indexing by integer needs a numeration system")
        return self.output_of_bits(self.ns.rep(n))


class Nfa:
    """Nondeterministic automaton with at most ``k`` successors per (state, symbol).

    ``succ`` has shape ``(states, 2**arity, k)``; missing successors are ``-1``.
    """

    __slots__ = ("tracks", "succ", "initial", "accepting", "ns")

    def __init__(self, tracks, succ, initial, accepting, ns=None):
        self.tracks = tuple(tracks)
        self.succ = np.asarray(succ, dtype=np.int32)
        if self.succ.ndim == 2:
            self.succ = self.succ[:, :, None]
        self.initial = np.unique(np.asarray(list(initial), dtype=np.int64))
        self.accepting = np.asarray(accepting, dtype=bool)
        self.ns = ns
        if self.succ.shape[1] != 1 << len(self.tracks):
            raise ValueError("successor table does not match arity")

    @property
    def num_states(self) -> int:
        return self.succ.shape[0]

    @classmethod
    def from_edges(cls, tracks, n: int, edges, initial, accepting, ns=None) -> "Nfa":
        """Build from ``(p, symbol, q)`` triples."""
        S = 1 << len(tuple(tracks))
        buckets: dict[tuple[int, int], list[int]] = {}
        for p, s, q in edges:
            lst = buckets.setdefault((p, s), [])
            if q not in lst:
                lst.append(q)
        k = max((len(v) for v in buckets.values()), default=1)
        succ = np.full((n, S, max(k, 1)), -1, dtype=np.int32)
        for (p, s), qs in buckets.items():
            succ[p, s, : len(qs)] = qs
        acc = np.zeros(n, dtype=bool)
        acc[list(accepting)] = True
        return cls(tracks, succ, initial, acc, ns)

    def accepts_symbols(self, symbols: Iterable[int]) -> bool:
        cur = set(self.initial.tolist())
        for s in symbols:
            nxt = set()
            for q in cur:
                nxt.update(int(t) for t in self.succ[q, s] if t >= 0)
            cur = nxt
        return any(self.accepting[q] for q in cur)


# ---------------------------------------------------------------------------
# graph helpers

def _reachable_mask(delta: np.ndarray, initial: int) -> np.ndarray:
    n = delta.shape[0]
    seen = np.zeros(n, dtype=bool)
    seen[initial] = True
    frontier = np.array([initial])
    while frontier.size:
        nxt = np.unique(delta[frontier].ravel())
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
    return seen


def _gather_ranges(starts: np.ndarray, nodes: np.ndarray) -> np.ndarray:
    """Concatenation of ``range(starts[v], starts[v+1])`` over ``nodes``."""
    lo = starts[nodes]
    lens = starts[nodes + 1] - lo
    total = int(lens.sum())
    if total == 0:
        return np.zeros(0, dtype=np.int64)
    offs = np.repeat(lo - np.concatenate([[0], np.cumsum(lens)[:-1]]), lens)
    return np.arange(total, dtype=np.int64) + offs


def _coreachable_edges(n: int, src: np.ndarray, dst: np.ndarray, accepting: np.ndarray) -> np.ndarray:
    """States from which an accepting state is reachable along the given edges."""
    order = np.argsort(dst, kind="stable")
    src, dst = src[order], dst[order]
    starts = np.searchsorted(dst, np.arange(n + 1))
    live = np.array(accepting, dtype=bool, copy=True)
    frontier = np.flatnonzero(live)
    while frontier.size:
        preds = np.unique(src[_gather_ranges(starts, frontier)])
        preds = preds[~live[preds]]
        live[preds] = True
        frontier = preds
    return live


def _coreachable(delta: np.ndarray, accepting: np.ndarray) -> np.ndarray:
    """States from which some accepting state can be reached."""
    n, S = delta.shape
    return _coreachable_edges(n, np.repeat(np.arange(n), S), delta.ravel().astype(np.int64), accepting)


def _sinks(delta: np.ndarray, accepting: np.ndarray) -> tuple[int | None, np.ndarray]:
    """Return (a rejecting sink state or None, mask of states that cannot accept)."""
    dead = ~_coreachable(delta, accepting)
    idx = np.flatnonzero(dead)
    return (int(idx[0]) if idx.size else None), dead


# ---------------------------------------------------------------------------
# minimization

def _moore_classes(delta: np.ndarray, accepting: np.ndarray) -> np.ndarray:
    """Coarsest stable partition refining acceptance (Moore's algorithm, vectorized)."""
    n, S = delta.shape
    _, cls = np.unique(accepting.astype(np.int64), return_inverse=True)
    cls = cls.astype(np.int64).reshape(-1)
    ncls = int(cls.max()) + 1 if n else 0
    while True:
        key = cls
        for a in range(S):
            key = key * ncls + cls[delta[:, a]]
            _, key = np.unique(key, return_inverse=True)
            key = key.reshape(-1)
        new = int(key.max()) + 1 if n else 0
        if new == ncls:
            return cls
        cls, ncls = key.astype(np.int64), new


def _bfs_order(delta: np.ndarray, initial: int) -> np.ndarray:
    """States in breadth-first discovery order (symbols in numeric order)."""
    n = delta.shape[0]
    seen = np.zeros(n, dtype=bool)
    seen[initial] = True
    order = [np.array([initial], dtype=np.int64)]
    frontier = order[0]
    while frontier.size:
        succ = delta[frontier].ravel()
        uniq, first = np.unique(succ, return_index=True)
        keep = ~seen[uniq]
        uniq, first = uniq[keep], first[keep]
        nxt = uniq[np.argsort(first, kind="stable")].astype(np.int64)
        seen[nxt] = True
        if nxt.size:
            order.append(nxt)
        frontier = nxt
    return np.concatenate(order)


def _renumber(delta: np.ndarray, accepting: np.ndarray, initial: int):
    order = _bfs_order(delta, initial)
    inv = np.full(delta.shape[0], -1, dtype=np.int64)
    inv[order] = np.arange(order.size)
    return inv[delta[order]], accepting[order]


def minimize_table(delta: np.ndarray, accepting: np.ndarray, initial: int):
    """Minimize a complete table; returns (delta, accepting) in canonical BFS numbering."""
    reach = _reachable_mask(delta, initial)
    if not reach.all():
        keep = np.flatnonzero(reach)
        inv = np.full(delta.shape[0], -1, dtype=np.int64)
        inv[keep] = np.arange(keep.size)
        delta = inv[delta[keep]]
        accepting = accepting[keep]
        initial = int(inv[initial])
    cls = _moore_classes(delta, accepting)
    k = int(cls.max()) + 1
    rep = np.zeros(k, dtype=np.int64)
    rep[cls] = np.arange(cls.size)
    qdelta = cls[delta[rep]]
    qacc = accepting[rep]
    return _renumber(qdelta, qacc, int(cls[initial]))


def minimize(a: Dfa) -> Dfa:
    """Unique minimal complete automaton, states numbered breadth-first from 0."""
    delta, acc = minimize_table(a.delta, a.accepting, a.initial)
    return Dfa._raw(a.tracks, delta, acc, 0, a.ns)


def minimize_dfao(d: Dfao) -> Dfao:
    """Output-respecting minimization of a DFAO."""
    reach = _reachable_mask(d.delta, d.initial)
    keep = np.flatnonzero(reach)
    inv = np.full(d.num_states, -1, dtype=np.int64)
    inv[keep] = np.arange(keep.size)
    delta = inv[d.delta[keep]]
    outs = d.outputs[keep]
    _, cls0 = np.unique(outs, return_inverse=True)
    # refine from output classes: encode outputs as multi-valued acceptance
    n, S = delta.shape
    cls = cls0.astype(np.int64).reshape(-1)
    ncls = int(cls.max()) + 1
    while True:
        key = cls
        for a in range(S):
            key = key * ncls + cls[delta[:, a]]
            _, key = np.unique(key, return_inverse=True)
            key = key.reshape(-1)
        new = int(key.max()) + 1
        if new == ncls:
            break
        cls, ncls = key.astype(np.int64), new
    rep = np.zeros(ncls, dtype=np.int64)
    rep[cls] = np.arange(cls.size)
    qdelta = cls[delta[rep]]
    qout = outs[rep]
    init = int(cls[inv[d.initial]])
    order = _bfs_order(qdelta, init)
    inv2 = np.full(ncls, -1, dtype=np.int64)
    inv2[order] = np.arange(order.size)
    return Dfao(inv2[qdelta[order]], qout[order], 0, d.ns)


# ---------------------------------------------------------------------------
# products

@dataclass
class _Component:
    tracks: tuple[str, ...]
    delta: np.ndarray
    initial: int
    # state whose presence makes the whole product reject forever
    killer: int | None = None


def _explore_product(comps: Sequence[_Component], tracks: Sequence[str],
                     accept_fn: Callable[[list[np.ndarray]], np.ndarray], what: str = "product"):
    """Reachable part of a synchronized product; returns (delta, accepting) with initial 0."""
    sizes = [c.delta.shape[0] for c in comps]
    strides = []
    s = 1
    for n in reversed(sizes):
        strides.append(s)
        s *= n
    strides = strides[::-1]
    if s >= 2 ** 62:
        raise ResourceError(f"{what}: product index space too large", states=s)
    proj = [c.delta[:, _symbol_map(c.tracks, tracks)] for c in comps]
    S = 1 << len(tracks)
    killer_codes = []

    def decode(codes):
        return [(codes // st) % n for st, n in zip(strides, sizes)]

    def succ(codes: np.ndarray) -> np.ndarray:
        out = np.empty((codes.size, S), dtype=np.int64)
        for lo in range(0, codes.size, _CHUNK):
            chunk = codes[lo:lo + _CHUNK]
            dead_in = chunk < 0
            safe = np.where(dead_in, 0, chunk)
            parts = decode(safe)
            acc = np.zeros((chunk.size, S), dtype=np.int64)
            kill = np.zeros((chunk.size, S), dtype=bool)
            for c, st, pr, q in zip(comps, strides, proj, parts):
                nxt = pr[q]
                acc += nxt.astype(np.int64) * st
                if c.killer is not None:
                    kill |= nxt == c.killer
            acc[kill] = -1
            acc[dead_in] = -1
            out[lo:lo + _CHUNK] = acc
        return out

    init_parts = [c.initial for c in comps]
    init = sum(q * st for q, st in zip(init_parts, strides))
    if any(c.killer is not None and c.initial == c.killer for c in comps):
        init = -1
    visited = np.array([init], dtype=np.int64)
    frontier = visited
    limit = _budget.get()
    while frontier.size:
        nxt = np.unique(succ(frontier))
        pos = np.searchsorted(visited, nxt)
        pos[pos >= visited.size] = visited.size - 1
        new = nxt[visited[pos] != nxt]
        if not new.size:
            break
        visited = np.union1d(visited, new)
        frontier = new
        if visited.size > limit:
            _note(visited.size)
            raise ResourceError(f"{what} exceeded the state budget ({visited.size} > {limit})",
                                states=visited.size)
    _note(visited.size)
    table = np.searchsorted(visited, succ(visited)).astype(np.int64)
    real = visited >= 0
    acc = np.zeros(visited.size, dtype=bool)
    if real.any():
        acc[real] = accept_fn(decode(visited[real]))
    init_idx = int(np.searchsorted(visited, init))
    return table, acc, init_idx


def _ns_of(*autos):
    ns = None
    for a in autos:
        if a.ns is not None:
            if ns is not None and a.ns is not ns:
                raise TrackError("automata belong to different numeration systems")
            ns = a.ns
    return ns


_VALIDITY_CACHE: dict[tuple[int, tuple[str, ...]], Dfa] = {}


def validity(ns, tracks: Sequence[str]) -> Dfa:
    """Automaton accepting every tuple word whose tracks are all valid in ``ns``."""
    tracks = tuple(tracks)
    key = (id(ns), tracks)
    hit = _VALIDITY_CACHE.get(key)
    if hit is not None:
        return hit
    v1 = ns.validity
    if not tracks:
        res = Dfa.constant(True, ns)
    else:
        comps = [_Component((t,), v1.delta, v1.initial, None) for t in tracks]
        dead = ~_coreachable(v1.delta, v1.accepting)
        killer = int(np.flatnonzero(dead)[0]) if dead.any() else None
        for c in comps:
            c.killer = killer
        acc1 = v1.accepting

        def accept(parts):
            ok = np.ones(parts[0].size, dtype=bool)
            for p in parts:
                ok &= acc1[p]
            return ok

        delta, acc, init = _explore_product(comps, tracks, accept, "validity")
        res = minimize(Dfa._raw(tracks, delta, acc, init, ns))
    _VALIDITY_CACHE[key] = res
    return res


BOOL_OPS: dict[str, Callable[[np.ndarray, np.ndarray], np.ndarray]] = {
    "and": np.logical_and,
    "or": np.logical_or,
    "implies": lambda x, y: np.logical_or(~x, y),
    "iff": lambda x, y: x == y,
    "xor": lambda x, y: x != y,
    "diff": lambda x, y: np.logical_and(x, ~y),
}


def _truth(op, x: bool, y: bool) -> bool:
    return bool(op(np.array([x]), np.array([y]))[0])


def unify_tracks(*track_lists: Sequence[str]) -> tuple[str, ...]:
    return tuple(sorted(set().union(*map(set, track_lists))))


def product(a: Dfa, b: Dfa, op="and") -> Dfa:
    """Boolean combination of two automata, joining tracks by name.

    The result is restricted to valid representations on every track and
    minimized.
    """
    fn = BOOL_OPS[op] if isinstance(op, str) else op
    ns = _ns_of(a, b)
    tracks = unify_tracks(a.tracks, b.tracks)
    ta, tb = set(a.tracks), set(b.tracks)
    need: set[str] = set()
    if _truth(fn, True, False):
        need |= tb - ta
    if _truth(fn, False, True):
        need |= ta - tb
    if _truth(fn, False, False):
        need |= set(tracks)
    comps = [_Component(a.tracks, a.delta, a.initial), _Component(b.tracks, b.delta, b.initial)]
    sa, _ = _sinks(a.delta, a.accepting)
    sb, _ = _sinks(b.delta, b.accepting)
    if sa is not None and not _truth(fn, False, True) and not _truth(fn, False, False):
        comps[0].killer = sa
    if sb is not None and not _truth(fn, True, False) and not _truth(fn, False, False):
        comps[1].killer = sb
    acc_a, acc_b = a.accepting, b.accepting
    checks = []
    if need and ns is not None:
        v = validity(ns, sorted(need))
        vs, _ = _sinks(v.delta, v.accepting)
        comps.append(_Component(v.tracks, v.delta, v.initial, vs))
        checks.append(v.accepting)

    def accept(parts):
        res = fn(acc_a[parts[0]], acc_b[parts[1]])
        for extra, p in zip(checks, parts[2:]):
            res = res & extra[p]
        return res

    delta, acc, init = _explore_product(comps, tracks, accept)
    return minimize(Dfa._raw(tracks, delta, acc, init, ns))


def intersect(*autos: Dfa) -> Dfa:
    out = autos[0]
    for x in autos[1:]:
        out = product(out, x, "and")
    return out


def complement(a: Dfa) -> Dfa:
    """Complement relative to valid tuple representations."""
    flipped = Dfa._raw(a.tracks, a.delta, ~a.accepting, a.initial, a.ns)
    if a.ns is None:
        return minimize(flipped)
    return product(flipped, validity(a.ns, a.tracks), "and")


def restrict_valid(a: Dfa) -> Dfa:
    if a.ns is None:
        return minimize(a)
    return product(a, validity(a.ns, a.tracks), "and")


def rename(a: Dfa, mapping: dict[str, str]) -> Dfa:
    """Rename tracks; tracks renamed to the same name are identified (diagonal)."""
    new_names = [mapping.get(t, t) for t in a.tracks]
    tracks = tuple(sorted(set(new_names)))
    r, m = a.arity, len(tracks)
    pos = {t: i for i, t in enumerate(tracks)}
    syms = np.arange(1 << m, dtype=np.int64)
    old = np.zeros(1 << m, dtype=np.int64)
    for i, t in enumerate(new_names):
        bit = (syms >> (m - 1 - pos[t])) & 1
        old |= bit << (r - 1 - i)
    delta = a.delta[:, old]
    res = Dfa._raw(tracks, delta, a.accepting, a.initial, a.ns)
    if len(tracks) == r and tracks == tuple(new_names):
        return res if tracks == a.tracks else minimize(res)
    return minimize(res)


def reorder(a: Dfa, tracks: Sequence[str]) -> Dfa:
    """Same automaton with the tracks permuted into the given order."""
    tracks = tuple(tracks)
    if sorted(tracks) != sorted(a.tracks):
        raise TrackError(f"{tracks} is not a permutation of {a.tracks}")
    if tracks == a.tracks:
        return a
    sm = _symbol_map(a.tracks, tracks)
    return Dfa._raw(tracks, a.delta[:, sm], a.accepting, a.initial, a.ns)


def cylindrify(a: Dfa, tracks: Sequence[str]) -> Dfa:
    """Extend ``a`` to a superset of tracks (new tracks unconstrained but valid)."""
    tracks = unify_tracks(a.tracks, tracks)
    if tracks == a.tracks:
        return a
    if a.ns is None:
        full = Dfa._raw(tracks, np.zeros((1, 1 << len(tracks))), [True])
    else:
        full = validity(a.ns, tracks)
    return product(a, full, "and")


# ---------------------------------------------------------------------------
# projection and subset construction

def project(a: Dfa, track: str) -> Nfa:
    """Erase one track; the result is nondeterministic.

    The initial set contains every state reachable from the initial state by
    columns that are zero on all remaining tracks, so that a witness for the
    erased track may be longer than the remaining representation.
    """
    if track not in a.tracks:
        raise TrackError(f"no track named {track!r} in {a.tracks}")
    k = a.tracks.index(track)
    r = a.arity
    rest = tuple(t for t in a.tracks if t != track)
    S2 = 1 << (r - 1)
    c = np.arange(S2, dtype=np.int64)
    # insert the removed bit at position r-1-k
    shift = r - 1 - k
    high = (c >> shift) << (shift + 1)
    low = c & ((1 << shift) - 1)
    s0 = high | low
    s1 = s0 | (1 << shift)
    succ = np.stack([a.delta[:, s0], a.delta[:, s1]], axis=2)
    zero_cols = np.array([0, 1 << shift])
    seen = np.zeros(a.num_states, dtype=bool)
    seen[a.initial] = True
    frontier = np.array([a.initial])
    while frontier.size:
        nxt = np.unique(a.delta[frontier][:, zero_cols].ravel())
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
    return Nfa(rest, succ, np.flatnonzero(seen), a.accepting, a.ns)


def determinize(nfa: Nfa, budget: int | None = None, label: str | None = None,
                minimal: bool = True) -> Dfa:
    """Subset construction (breadth-first, frontier-vectorized), then minimization."""
    limit = _budget.get() if budget is None else int(budget)
    n, S, k = nfa.succ.shape
    if n == 0:
        return Dfa._raw(nfa.tracks, np.zeros((1, S)), [False], 0, nfa.ns)
    # states that cannot reach acceptance contribute nothing to a subset
    flat = nfa.succ.reshape(n, S * k)
    edges_p = np.repeat(np.arange(n), S * k)
    edges_q = flat.ravel()
    ok = edges_q >= 0
    live = _coreachable_edges(n, edges_p[ok], edges_q[ok], nfa.accepting)
    succ = np.where((nfa.succ >= 0) & live[np.maximum(nfa.succ, 0)], nfa.succ, -1)
    acc = nfa.accepting
    dtype = np.uint16 if n < 0xFFFF else np.uint32
    width = np.dtype(dtype).itemsize

    init = nfa.initial[live[nfa.initial]].astype(np.int64)
    ids: dict[bytes, int] = {init.astype(dtype).tobytes(): 0}
    accepting = [bool(acc[init].any())]
    rows: list[np.ndarray] = []
    f_elems = init
    f_sizes = np.array([init.size], dtype=np.int64)
    next_id = 1
    sym = np.arange(S, dtype=np.int64)
    while f_sizes.size:
        m = f_sizes.size
        f_off = np.concatenate([[0], np.cumsum(f_sizes)])
        level_rows = np.empty(m * S, dtype=np.int64)
        new_elems: list[np.ndarray] = []
        new_sizes: list[np.ndarray] = []
        # split the frontier so that the expanded arrays stay small
        lo = 0
        while lo < m:
            hi = lo + 1
            budget_elems = max(1, (1 << 22) // (S * k))
            hi = int(np.searchsorted(f_off, f_off[lo] + budget_elems, side="right")) - 1
            hi = min(max(hi, lo + 1), m)
            elems = f_elems[f_off[lo]:f_off[hi]]
            owner = np.repeat(np.arange(hi - lo, dtype=np.int64), f_sizes[lo:hi])
            t = succ[elems]  # (E, S, k)
            cand = (owner[:, None, None] * S + sym[None, :, None])
            cand = np.broadcast_to(cand, t.shape).ravel()
            tq = t.ravel().astype(np.int64)
            mask = tq >= 0
            key = np.unique(cand[mask] * n + tq[mask])
            c_of = key // n
            st = key - c_of * n
            ncand = (hi - lo) * S
            counts = np.bincount(c_of, minlength=ncand)
            offs = np.concatenate([[0], np.cumsum(counts)]) * width
            cand_acc = np.bincount(c_of, weights=acc[st], minlength=ncand) > 0
            buf = st.astype(dtype).tobytes()
            offl = offs.tolist()
            out = [0] * ncand
            fresh: list[int] = []
            get = ids.get
            for ci in range(ncand):
                kb = buf[offl[ci]:offl[ci + 1]]
                j = get(kb)
                if j is None:
                    j = next_id
                    ids[kb] = j
                    next_id += 1
                    fresh.append(ci)
                out[ci] = j
            level_rows[lo * S:hi * S] = out
            if fresh:
                fresh_arr = np.array(fresh, dtype=np.int64)
                is_new = np.zeros(ncand, dtype=bool)
                is_new[fresh_arr] = True
                new_elems.append(st[is_new[c_of]])
                new_sizes.append(counts[fresh_arr])
                accepting.extend(cand_acc[fresh_arr].tolist())
            if next_id > limit:
                _note(next_id)
                raise ResourceError(
                    f"determinization{' of ' + label if label else ''} exceeded the state budget "
                    f"({next_id} > {limit})", states=next_id, label=label)
            lo = hi
        rows.append(level_rows.reshape(m, S))
        f_elems = np.concatenate(new_elems) if new_elems else np.zeros(0, dtype=np.int64)
        f_sizes = np.concatenate(new_sizes) if new_sizes else np.zeros(0, dtype=np.int64)
    del ids
    delta = np.concatenate(rows, axis=0)
    _note(delta.shape[0])
    res = Dfa._raw(nfa.tracks, delta, np.array(accepting, dtype=bool), 0, nfa.ns)
    return minimize(res) if minimal else res


def exists(a: Dfa, names: str | Sequence[str], label: str | None = None) -> Dfa:
    """Existential quantification over one or more tracks."""
    if isinstance(names, str):
        names = [names]
    out = a
    for t in names:
        if t not in out.tracks:
            continue
        out = determinize(project(out, t), label=label)
    return out


def forall(a: Dfa, names: str | Sequence[str], label: str | None = None) -> Dfa:
    return complement(exists(complement(a), names, label=label))


# ---------------------------------------------------------------------------
# queries

def is_empty(a: Dfa) -> bool:
    reach = _reachable_mask(a.delta, a.initial)
    return not bool(a.accepting[reach].any())


def language_equal(a: Dfa, b: Dfa) -> bool:
    if sorted(a.tracks) != sorted(b.tracks):
        raise TrackError(f"track names differ: {a.tracks} vs {b.tracks}")
    b = reorder(b, a.tracks)
    ma, mb = minimize(a), minimize(b)
    return (ma.num_states == mb.num_states and np.array_equal(ma.delta, mb.delta)
            and np.array_equal(ma.accepting, mb.accepting))


def accepted_words(a: Dfa, max_length: int) -> set[tuple[int, ...]]:
    """All accepted symbol words of length at most ``max_length`` (small automata only)."""
    out: set[tuple[int, ...]] = set()
    S = 1 << a.arity
    layer = {(): a.initial}
    for _ in range(max_length + 1):
        nxt = {}
        for w, q in layer.items():
            if a.accepting[q]:
                out.add(w)
            for s in range(S):
                nxt[w + (s,)] = int(a.delta[q, s])
        layer = nxt
    return out


def _exact_live(a: Dfa, steps: int) -> list[np.ndarray]:
    """``live[m][q]``: some word of length exactly m leads from q to acceptance."""
    live = [a.accepting.copy()]
    for _ in range(steps):
        prev = live[-1]
        live.append(prev[a.delta].any(axis=1))
    return live


def enumerate_words(a: Dfa, limit: int | None = None, max_length: int | None = None):
    """Accepted words with no leading all-zero column, in radix order."""
    if max_length is None:
        max_length = max(64, a.num_states + 1)
    live = _exact_live(a, max_length)
    S = 1 << a.arity
    found = 0
    for length in range(max_length + 1):
        if not live[length][a.initial]:
            continue
        stack = [(a.initial, ())]
        # depth-first, symbols in increasing order, gives lexicographic order
        while stack:
            q, w = stack.pop()
            rem = length - len(w)
            if rem == 0:
                yield w
                found += 1
                if limit is not None and found >= limit:
                    return
                continue
            first = len(w) == 0
            for s in range(S - 1, -1, -1):
                if first and s == 0:
                    continue
                t = int(a.delta[q, s])
                if live[rem - 1][t]:
                    stack.append((t, w + (s,)))


def enumerate_values(a: Dfa, limit: int | None = None, max_length: int | None = None):
    """Accepted tuples decoded to integers, in radix order of canonical representations."""
    if a.ns is None:
        raise TrackError("decoding needs a numeration system")
    r = a.arity
    out = []
    for w in enumerate_words(a, limit, max_length):
        cols = [symbol_to_column(s, r) for s in w]
        out.append(tuple(a.ns.value_of([c[i] for c in cols]) for i in range(r)))
    return out


def values_up_to(a: Dfa, bound: int) -> list[tuple[int, ...]]:
    """All accepted tuples whose entries are all at most ``bound``."""
    if a.ns is None:
        raise TrackError("decoding needs a numeration system")
    length = len(a.ns.rep(bound))
    vals = enumerate_values(a, None, length)
    return sorted(v for v in vals if all(x <= bound for x in v))


def pad_closure(a: Dfa) -> Dfa:
    """Smallest pad-closed language containing L(a), restricted to valid words."""
    n, S = a.delta.shape
    zero = 0
    reach = np.zeros(n, dtype=bool)
    reach[a.initial] = True
    frontier = np.array([a.initial])
    while frontier.size:
        nxt = np.unique(a.delta[frontier, zero])
        nxt = nxt[~reach[nxt]]
        reach[nxt] = True
        frontier = nxt
    zset = np.flatnonzero(reach)
    # extra state n loops on the zero column and behaves like the zero-reachable set
    succ = np.full((n + 1, S, zset.size + 1), -1, dtype=np.int32)
    succ[:n, :, 0] = a.delta
    succ[n, :, : zset.size] = a.delta[zset].T
    succ[n, zero, zset.size] = n
    acc = np.concatenate([a.accepting, [a.accepting[zset].any()]])
    nfa = Nfa(a.tracks, succ, list(zset) + [n], acc, a.ns)
    out = determinize(nfa)
    return restrict_valid(out)


def strip_zero_prefix(a: Dfa) -> Dfa:
    """The language ``{w : 0^k w accepted for some k}``."""
    n, S = a.delta.shape
    return determinize(Nfa(a.tracks, a.delta[:, :, None], _zero_reach(a), a.accepting, a.ns))


def _zero_reach(a: Dfa) -> np.ndarray:
    reach = np.zeros(a.num_states, dtype=bool)
    reach[a.initial] = True
    frontier = np.array([a.initial])
    while frontier.size:
        nxt = np.unique(a.delta[frontier, 0])
        nxt = nxt[~reach[nxt]]
        reach[nxt] = True
        frontier = nxt
    return np.flatnonzero(reach)


def is_pad_closed(a: Dfa) -> bool:
    """True iff ``w`` is accepted exactly when ``0w`` is."""
    m = Dfa._raw(a.tracks, a.delta, a.accepting, a.initial, a.ns)
    cls = _moore_classes(m.delta, m.accepting)
    return bool(cls[a.initial] == cls[a.delta[a.initial, 0]])


def from_table(tracks, delta, accepting_states, initial=0, ns=None) -> Dfa:
    n = len(delta)
    acc = np.zeros(n, dtype=bool)
    acc[list(accepting_states)] = True
    return Dfa(tracks, delta, acc, initial, ns)


def singleton_word(tracks, symbols: Sequence[int], ns=None) -> Dfa:
    """Automaton for ``0* w``, where leading zero columns of ``w`` are ignored."""
    S = 1 << len(tuple(tracks))
    symbols = list(symbols)
    while symbols and symbols[0] == 0:
        symbols.pop(0)
    L = len(symbols)
    dead = L + 1
    delta = np.full((L + 2, S), dead, dtype=np.int32)
    delta[0, 0] = 0
    for i, s in enumerate(symbols):
        delta[i, s] = i + 1
    acc = np.zeros(L + 2, dtype=bool)
    acc[L] = True
    return minimize(Dfa._raw(tracks, delta, acc, 0, ns))

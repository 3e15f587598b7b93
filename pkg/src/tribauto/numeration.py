"""Tribonacci numbers, representations, and numeration-system definitions.

Words are most-significant digit first.  The user-facing helpers take and
return strings of ``0``/``1``; :class:`NumerationSystem` works with tuples of
ints.
"""
from __future__ import annotations

import hashlib
import re
from bisect import bisect_right
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .automata.core import (Dfa, _moore_classes, format_column, minimize, product, validity,
                            column_to_symbol, singleton_word, symbol_to_column)

# real zero of x^3 - x^2 - x - 1
ALPHA = 1.83928675521416113255185
# T_n ~ C1 * ALPHA**n; documented constant only, never computed
C1 = 0.336228116994941094225362954

_CANONICAL = re.compile(r"(?:(?:1|11)(?:0|01|011)*)?")

# sha256 of the shipped tribonacci.nsd
TRIBONACCI_NSD_SHA256 = "502c8affcba7b8df3f70de4123c6707ba9d106225dae151f3633b0e4905f6701"

_TRIB = [0, 1, 1]


def tribonacci(n: int) -> int:
    """T_n with T_0 = 0, T_1 = T_2 = 1."""
    if n < 0:
        raise ValueError("index must be non-negative")
    while len(_TRIB) <= n:
        _TRIB.append(_TRIB[-1] + _TRIB[-2] + _TRIB[-3])
    return _TRIB[n]


def _bits(w: str | Sequence[int]) -> list[int]:
    if isinstance(w, str):
        if any(c not in "01" for c in w):
            raise ValueError(f"not a binary word: {w!r}")
        return [ord(c) - 48 for c in w]
    return [int(b) for b in w]


def value_of(w: str | Sequence[int]) -> int:
    """[w]_T for any bit word, including leading zeros and 111 blocks."""
    bits = _bits(w)
    n = len(bits)
    return sum(tribonacci(n + 1 - i) for i, b in enumerate(bits) if b)


def canonical_rep(n: int) -> str:
    """Greedy Tribonacci representation of ``n``; ``""`` for zero."""
    if n < 0:
        raise ValueError("negative numbers have no representation")
    if n == 0:
        return ""
    k = 2
    while tribonacci(k + 1) <= n:
        k += 1
    out = []
    for i in range(k, 1, -1):
        t = tribonacci(i)
        if t <= n:
            out.append("1")
            n -= t
        else:
            out.append("0")
    return "".join(out)


def is_canonical(w: str | Sequence[int]) -> bool:
    s = w if isinstance(w, str) else "".join(str(int(b)) for b in w)
    return _CANONICAL.fullmatch(s) is not None


# ---------------------------------------------------------------------------
# numeration systems

class NsdError(ValueError):
    """Malformed numeration definition."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


class ClosureError(ValueError):
    pass


@dataclass(eq=False)
class NumerationSystem:
    """Addition, ordering and validity automata plus positional digit semantics.

    Place values are derived from the validity automaton: the value of
    ``1 0^k`` is the number of canonical words of length at most ``k``, which
    holds whenever the radix order of canonical words is the numeric order.
    """

    name: str
    addition: Dfa
    less_than: Dfa
    validity: Dfa
    alphabet: tuple[int, ...] = (0, 1)
    _places: list[int] = field(default_factory=list, repr=False)
    _cache: dict = field(default_factory=dict, repr=False)

    # -- digit semantics ---------------------------------------------------
    def _extend_places(self, k: int) -> None:
        v = self.validity
        if not self._places:
            self._counts = [v.accepting.astype(object)]  # words of length m accepted from q
            self._places.append(1)
        while len(self._places) <= k:
            m = len(self._places)  # place value of 1 0^m
            while len(self._counts) < m:
                prev = self._counts[-1]
                self._counts.append(prev[v.delta[:, 0]] + prev[v.delta[:, 1]])
            # canonical words of length exactly m start with 1
            q1 = int(v.delta[v.initial, 1])
            self._places.append(self._places[-1] + int(self._counts[m - 1][q1]))

    def place(self, k: int) -> int:
        if k >= len(self._places):
            self._extend_places(k + 8)
        return self._places[k]

    def value_of(self, bits: Iterable[int]) -> int:
        bits = list(bits)
        n = len(bits)
        if n >= len(self._places):
            self._extend_places(n + 8)
        pl = self._places
        return sum(pl[n - 1 - i] for i, b in enumerate(bits) if b)

    def rep(self, n: int) -> tuple[int, ...]:
        """Canonical (greedy) representation as a tuple of bits."""
        if n < 0:
            raise ValueError("negative numbers have no representation")
        if n == 0:
            return ()
        if not self._places:
            self._extend_places(8)
        while self._places[-1] <= n:
            self._extend_places(2 * len(self._places))
        pl = self._places
        k = bisect_right(pl, n) - 1
        out = []
        for i in range(k, -1, -1):
            if pl[i] <= n:
                out.append(1)
                n -= pl[i]
            else:
                out.append(0)
        return tuple(out)

    def is_valid(self, bits: Iterable[int]) -> bool:
        return self.validity.accepts_symbols(bits)

    def zip(self, values: Sequence[int]) -> list[tuple[int, ...]]:
        """Canonical tuple representation: coordinates left-padded to a common length."""
        reps = [self.rep(v) for v in values]
        L = max((len(r) for r in reps), default=0)
        padded = [(0,) * (L - len(r)) + r for r in reps]
        return [tuple(p[i] for p in padded) for i in range(L)]

    def unzip(self, columns: Sequence[Sequence[int]], arity: int) -> tuple[int, ...]:
        return tuple(self.value_of([c[i] for c in columns]) for i in range(arity))

    def accepts(self, dfa: Dfa, *values: int) -> bool:
        """Run a (possibly raw) automaton on the canonical representation of ``values``."""
        return dfa.accepts_columns(self.zip(values))

    # -- relations in normal form (valid, pad-closed, minimal) ---------------
    def addition_relation(self) -> Dfa:
        """{(x, y, z) : x + y = z} over tracks x, y, z."""
        hit = self._cache.get("add")
        if hit is None:
            raw = Dfa(("x", "y", "z"), self.addition.delta, self.addition.accepting,
                      self.addition.initial, self)
            hit = product(raw, validity(self, ("x", "y", "z")), "and")
            self._cache["add"] = hit
        return hit

    def less_than_relation(self) -> Dfa:
        """{(x, y) : x < y} over tracks x, y."""
        hit = self._cache.get("lt")
        if hit is None:
            raw = Dfa(("x", "y"), self.less_than.delta, self.less_than.accepting,
                      self.less_than.initial, self)
            hit = product(raw, validity(self, ("x", "y")), "and")
            self._cache["lt"] = hit
        return hit

    def equality_relation(self) -> Dfa:
        hit = self._cache.get("eq")
        if hit is None:
            delta = np.array([[0, 1, 1, 0], [1, 1, 1, 1]])
            raw = Dfa(("x", "y"), delta, [True, False], 0, self)
            hit = product(raw, validity(self, ("x", "y")), "and")
            self._cache["eq"] = hit
        return hit

    def constant(self, value: int, track: str = "x") -> Dfa:
        """Single-track automaton accepting exactly the representations of ``value``."""
        return singleton_word((track,), list(self.rep(value)), self)

    def valid_words(self, tracks: Sequence[str]) -> Dfa:
        return validity(self, tuple(tracks))

    def __repr__(self) -> str:
        return f"NumerationSystem({self.name!r})"


# ---------------------------------------------------------------------------
# .nsd parsing

_SECTIONS = ("name", "addition", "less_than", "validity")
_ARITY = {"addition": 3, "less_than": 2, "validity": 1}
_SYM = re.compile(r"\[\s*([01](?:\s*,\s*[01])*)\s*\]")


def _parse_automaton(section: str, lines: list[tuple[int, str]]) -> Dfa:
    arity = _ARITY[section]
    n = initial = None
    accepting: list[int] = []
    edges: list[tuple[int, int, int, int]] = []
    for lineno, raw in lines:
        text = raw.split("#", 1)[0].rstrip()
        stripped = text.strip()
        col = len(text) - len(text.lstrip()) + 1
        parts = stripped.split()
        head = parts[0]
        try:
            if head == "states":
                n = int(parts[1])
            elif head == "initial":
                initial = int(parts[1])
            elif head == "accepting":
                accepting = [int(x) for x in parts[1:]]
            else:
                m = re.fullmatch(r"(\d+)\s+(\[[^\]]*\])\s+(\d+)", stripped)
                if not m:
                    raise NsdError(f"cannot parse transition {stripped!r}", lineno, col)
                sm = _SYM.fullmatch(m.group(2))
                if not sm:
                    raise NsdError(f"bad symbol {m.group(2)!r}", lineno, col + m.start(2))
                bits = [int(b) for b in sm.group(1).replace(" ", "").split(",")]
                if len(bits) != arity:
                    raise NsdError(f"symbol {m.group(2)} has arity {len(bits)}, expected {arity}",
                                   lineno, col + m.start(2))
                edges.append((int(m.group(1)), column_to_symbol(bits), int(m.group(3)), lineno))
        except (IndexError, ValueError) as exc:
            if isinstance(exc, NsdError):
                raise
            raise NsdError(f"malformed line {stripped!r}", lineno, col) from None
    first = lines[0][0] if lines else 0
    if n is None or initial is None:
        raise NsdError(f"[{section}] needs 'states' and 'initial'", first, 1)
    S = 1 << arity
    delta = np.full((n, S), -1, dtype=np.int64)
    for p, s, q, lineno in edges:
        if not (0 <= p < n and 0 <= q < n):
            raise NsdError(f"state out of range in [{section}]", lineno, 1)
        delta[p, s] = q
    if (delta < 0).any():
        p, s = map(int, np.argwhere(delta < 0)[0])
        raise NsdError(f"[{section}] has no transition from {p} on {format_column(symbol_to_column(s, arity))}",
                       first, 1)
    names = ("x", "y", "z")[:arity] if arity > 1 else ("x",)
    acc = np.zeros(n, dtype=bool)
    acc[accepting] = True
    return Dfa(names, delta, acc, initial)


def _check_closure(name: str, a: Dfa) -> None:
    cls = _moore_classes(a.delta, a.accepting)
    if cls[a.initial] != cls[a.delta[a.initial, 0]]:
        raise ClosureError(f"automaton [{name}] is not closed under leading zero padding")


def parse_numeration(text: str) -> NumerationSystem:
    sections: dict[str, list[tuple[int, str]]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        s = body.strip()
        if s.startswith("["):
            if not re.fullmatch(r"\[[A-Za-z_]+\]", s) or s[1:-1] not in _SECTIONS:
                if re.fullmatch(r"\[[A-Za-z_]+\]", s):
                    raise NsdError(f"unknown section {s}", lineno, body.index("[") + 1)
                if current in _ARITY:
                    sections[current].append((lineno, body))
                    continue
                raise NsdError(f"unexpected {s!r}", lineno, body.index("[") + 1)
            current = s[1:-1]
            if current in sections:
                raise NsdError(f"duplicate section {s}", lineno, 1)
            sections[current] = []
            continue
        if current is None:
            raise NsdError("content before the first section", lineno, 1)
        sections[current].append((lineno, body))
    for sec in _SECTIONS:
        if sec not in sections:
            raise NsdError(f"missing section [{sec}]")
    name_lines = sections["name"]
    if len(name_lines) != 1:
        raise NsdError("[name] must contain exactly one line", name_lines[0][0] if name_lines else None, 1)
    name = name_lines[0][1].strip()
    autos = {sec: _parse_automaton(sec, sections[sec]) for sec in _ARITY}
    for sec, a in autos.items():
        _check_closure(sec, a)
    return NumerationSystem(name, autos["addition"], autos["less_than"], autos["validity"])


def load_numeration(source: str | Path) -> NumerationSystem:
    """Load a ``.nsd`` file (path) or definition text."""
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source
                                    and source.endswith(".nsd")):
        text = Path(source).read_text()
    else:
        text = source
    return parse_numeration(text)


def builtin_path(name: str) -> Path:
    return Path(str(resources.files("tribauto") / "data" / f"{name}.nsd"))


@lru_cache(maxsize=None)
def tribonacci_system() -> NumerationSystem:
    text = builtin_path("tribonacci").read_text()
    digest = hashlib.sha256(text.encode()).hexdigest()
    if digest != TRIBONACCI_NSD_SHA256:
        raise NsdError(f"tribonacci.nsd checksum mismatch ({digest})")
    return parse_numeration(text)


@lru_cache(maxsize=None)
def base2_system() -> NumerationSystem:
    return load_numeration(builtin_path("base2"))


def zip_values(values: Sequence[int], ns: NumerationSystem | None = None) -> list[tuple[int, ...]]:
    return (ns or tribonacci_system()).zip(values)


def addition_dfa() -> Dfa:
    """The raw addition table: 44 states, initial state 1, state 0 dead."""
    return tribonacci_system().addition


def canonical_addition_dfa() -> Dfa:
    """Addition restricted to valid representations on every coordinate, minimized."""
    return tribonacci_system().addition_relation()


def less_than_dfa() -> Dfa:
    return tribonacci_system().less_than_relation()

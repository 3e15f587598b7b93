"""Regular expressions over the digits 0 and 1.

Syntax: literals ``0`` ``1``, juxtaposition for concatenation, ``+`` for
union, postfix ``*``, parentheses, and ``ε`` (or ``e``) for the empty word.
Whitespace is ignored.  The automaton is built with the position
(Glushkov) construction, so no epsilon moves are needed.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import Dfa, Nfa, determinize, pad_closure


class RegexSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


@dataclass
class _Node:
    nullable: bool
    first: frozenset
    last: frozenset


class _Glushkov:
    def __init__(self, text: str):
        self.text = text
        self.i = 0
        self.letters: list[int] = []  # letter at each position (1-based)
        self.follow: dict[int, set[int]] = {}

    def peek(self) -> str:
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1
        return self.text[self.i] if self.i < len(self.text) else ""

    def parse(self) -> _Node:
        node = self.union()
        if self.peek():
            raise RegexSyntaxError(f"unexpected {self.peek()!r}", self.i)
        return node

    def union(self) -> _Node:
        node = self.concat()
        while self.peek() == "+":
            self.i += 1
            rhs = self.concat()
            node = _Node(node.nullable or rhs.nullable, node.first | rhs.first, node.last | rhs.last)
        return node

    def concat(self) -> _Node:
        node = None
        while self.peek() and self.peek() not in "+)":
            rhs = self.star()
            if node is None:
                node = rhs
                continue
            for p in node.last:
                self.follow[p] |= rhs.first
            node = _Node(node.nullable and rhs.nullable,
                         node.first | rhs.first if node.nullable else node.first,
                         node.last | rhs.last if rhs.nullable else rhs.last)
        if node is None:
            raise RegexSyntaxError("expected an expression", self.i)
        return node

    def star(self) -> _Node:
        node = self.atom()
        while self.peek() == "*":
            self.i += 1
            for p in node.last:
                self.follow[p] |= node.first
            node = _Node(True, node.first, node.last)
        return node

    def atom(self) -> _Node:
        c = self.peek()
        if c in ("0", "1"):
            self.i += 1
            self.letters.append(int(c))
            p = len(self.letters)
            self.follow[p] = set()
            return _Node(False, frozenset([p]), frozenset([p]))
        if c in ("ε", "e"):
            self.i += 1
            return _Node(True, frozenset(), frozenset())
        if c == "(":
            start = self.i
            self.i += 1
            node = self.union()
            if self.peek() != ")":
                raise RegexSyntaxError(f"unclosed '(' opened at {start}", self.i)
            self.i += 1
            return node
        raise RegexSyntaxError(f"unexpected {c!r}" if c else "unexpected end of pattern", self.i)


def regex_nfa(pattern: str, track: str = "n", ns=None) -> Nfa:
    g = _Glushkov(pattern)
    root = g.parse()
    m = len(g.letters)
    edges = [(0, g.letters[q - 1], q) for q in root.first]
    for p in range(1, m + 1):
        edges.extend((p, g.letters[q - 1], q) for q in g.follow[p])
    accepting = set(root.last) | ({0} if root.nullable else set())
    return Nfa.from_edges((track,), m + 1, edges, [0], accepting, ns)


def regex_to_dfa(pattern: str, track: str = "n", ns=None, closed: bool = True) -> Dfa:
    """Minimal automaton for the pattern; by default pad-closed and valid in ``ns``.

    ``ns`` defaults to the Tribonacci system.
    """
    if ns is None:
        from ..numeration import tribonacci_system
        ns = tribonacci_system()
    d = determinize(regex_nfa(pattern, track, ns))
    return pad_closure(d) if closed else d

"""Text serialization and Graphviz export of automata."""
from __future__ import annotations

import re

import numpy as np

from .core import Dfa, Dfao, format_column, symbol_to_column


def dumps(a: Dfa | Dfao) -> str:
    """Canonical text form; equal languages give identical text after minimization."""
    lines = []
    if isinstance(a, Dfao):
        lines.append("tracks n")
        lines.append(f"states {a.num_states}")
        lines.append(f"initial {a.initial}")
        lines.append("outputs " + " ".join(str(int(o)) for o in a.outputs))
        for q in range(a.num_states):
            for b in (0, 1):
                lines.append(f"{q} [{b}] {int(a.delta[q, b])}")
        return "\n".join(lines) + "\n"
    lines.append("tracks " + " ".join(a.tracks))
    lines.append(f"states {a.num_states}")
    lines.append(f"initial {a.initial}")
    lines.append("accepting " + " ".join(str(q) for q in np.flatnonzero(a.accepting)))
    r = a.arity
    for q in range(a.num_states):
        for s in range(1 << r):
            lines.append(f"{q} {format_column(symbol_to_column(s, r))} {int(a.delta[q, s])}")
    return "\n".join(lines) + "\n"


_LINE = re.compile(r"^(\d+)\s*\[([01,\s]*)\]\s*(\d+)$")


def loads(text: str, ns=None) -> Dfa | Dfao:
    header: dict[str, list[str]] = {}
    trans = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE.match(line)
        if m:
            bits = [int(b) for b in m.group(2).replace(",", " ").split()]
            trans.append((int(m.group(1)), bits, int(m.group(3))))
            continue
        key, *rest = line.split()
        if key not in ("tracks", "states", "initial", "accepting", "outputs"):
            raise ValueError(f"line {lineno}: unknown keyword {key!r}")
        header[key] = rest
    tracks = header.get("tracks", [])
    n = int(header["states"][0])
    init = int(header.get("initial", ["0"])[0])
    r = len(tracks)
    delta = np.full((n, 1 << r), -1, dtype=np.int64)
    for p, bits, q in trans:
        if len(bits) != r:
            raise ValueError(f"column {bits} does not have {r} bits")
        s = 0
        for b in bits:
            s = (s << 1) | b
        delta[p, s] = q
    if (delta < 0).any():
        raise ValueError("transition table is not total")
    if "outputs" in header:
        return Dfao(delta, [int(x) for x in header["outputs"]], init, ns)
    acc = np.zeros(n, dtype=bool)
    acc[[int(x) for x in header.get("accepting", [])]] = True
    return Dfa(tracks, delta, acc, init, ns)


def to_dot(a: Dfa | Dfao, name: str = "A", hide_dead: bool = True) -> str:
    """Graphviz digraph; DFAO states are labelled ``q/output``."""
    out = [f"digraph {name} {{", "  rankdir=LR;", '  node [shape=circle];',
           '  start [shape=point];']
    if isinstance(a, Dfao):
        n, r = a.num_states, 1
        labels = [f"{q}/{int(a.outputs[q])}" for q in range(n)]
        shapes = ["circle"] * n
        delta = a.delta
        dead = set()
    else:
        n, r = a.num_states, a.arity
        labels = [str(q) for q in range(n)]
        shapes = ["doublecircle" if a.accepting[q] else "circle" for q in range(n)]
        delta = a.delta
        dead = set(_dead(a)) if hide_dead else set()
    for q in range(n):
        if q in dead:
            continue
        out.append(f'  s{q} [label="{labels[q]}", shape={shapes[q]}];')
    out.append(f"  start -> s{a.initial};")
    for q in range(n):
        if q in dead:
            continue
        by_target: dict[int, list[str]] = {}
        for s in range(1 << r):
            t = int(delta[q, s])
            if t in dead:
                continue
            col = symbol_to_column(s, r)
            text = str(col[0]) if r == 1 else format_column(col)
            by_target.setdefault(t, []).append(text)
        for t, syms in by_target.items():
            out.append(f'  s{q} -> s{t} [label="{", ".join(syms)}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def _dead(a: Dfa) -> list[int]:
    rows = np.all(a.delta == np.arange(a.num_states)[:, None], axis=1) & ~a.accepting
    return [int(q) for q in np.flatnonzero(rows) if q != a.initial]

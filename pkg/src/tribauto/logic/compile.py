"""Compile parsed queries to automata by structural recursion.

Compound terms are flattened: each arithmetic node gets a fresh auxiliary
track tied to its operands through the addition relation, and the
auxiliaries of the operands are projected away as soon as the node's
relation is built.  Every term node and every formula node appends one
line to the log, in post-order.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from ..automata import (Dfa, Dfao, ResourceError, complement, cylindrify, enumerate_values, exists,
                        minimize, product, rename, state_budget, track_peak, validity,
                        values_up_to)
from ..automata.core import _Component, _explore_product, _sinks
from ..numeration import NumerationSystem
from .syntax import (Add, And, Atom, BoolConst, Call, Const, Exists, Forall, Formula, Iff, Implies,
                     Index, Mul, Not, Or, Sub, Term, Var, free_var_order, parse)


class CompileError(ValueError):
    pass


@dataclass
class LogEntry:
    text: str
    states: int
    ms: float

    def __str__(self):
        return f"{self.text} with {self.states} states, in {int(round(self.ms))}ms"


@dataclass
class CompiledPredicate:
    formula: Formula
    dfa: Dfa
    free_tracks: tuple[str, ...]
    log: list[LogEntry] = field(default_factory=list)
    peak: int = 0
    elapsed_ms: float = 0.0

    def format_log(self, times: bool = True) -> str:
        """One line per subexpression, each indented one step further than the last."""
        lines = []
        for k, e in enumerate(self.log):
            ms = int(round(e.ms)) if times else 0
            lines.append(f"{' ' * k}{e.text} with {e.states} states, in {ms}ms")
        lines.append(f"overall time: {int(round(self.elapsed_ms)) if times else 0}ms")
        return "\n".join(lines)

    def accepts(self, *values: int, **named: int) -> bool:
        """Membership, with positional values in ``free_tracks`` order."""
        if not named:
            if len(values) != len(self.free_tracks):
                raise TypeError(f"expected values for {self.free_tracks}")
            named = dict(zip(self.free_tracks, values))
        ordered = [named[t] for t in self.dfa.tracks]
        if not ordered:
            return self.dfa.truth
        return self.dfa.accepts_columns(self.dfa.ns.zip(ordered))

    def values(self, limit: int | None = None, max_length: int | None = None):
        """Accepted tuples in ``free_tracks`` order."""
        pos = [self.dfa.tracks.index(t) for t in self.free_tracks]
        return [tuple(v[i] for i in pos)
                for v in enumerate_values(self.dfa, limit, max_length)]

    def values_up_to(self, bound: int):
        pos = [self.dfa.tracks.index(t) for t in self.free_tracks]
        return sorted(tuple(v[i] for i in pos) for v in values_up_to(self.dfa, bound))


_CMP = {
    "=": np.equal, "!=": np.not_equal, "<": np.less,
    "<=": np.less_equal, ">": np.greater, ">=": np.greater_equal,
}
_FLIP = {"=": "=", "!=": "!=", "<": ">", "<=": ">=", ">": "<", ">=": "<="}


class Compiler:
    def __init__(self, ns: NumerationSystem, sequences: Mapping[str, Dfao] | None = None,
                 predicates: Mapping[str, "CompiledPredicate"] | None = None):
        self.ns = ns
        self.sequences = dict(sequences or {})
        self.predicates = dict(predicates or {})
        self.log: list[LogEntry] = []
        self._fresh = 0
        self._cache: dict = {}

    # -- bookkeeping -----------------------------------------------------
    def fresh(self) -> str:
        self._fresh += 1
        return f"_{self._fresh}"

    def _record(self, node, a: Dfa, t0: float) -> Dfa:
        self.log.append(LogEntry(str(node), a.num_states, (time.perf_counter() - t0) * 1000))
        return a

    # -- basic relations ---------------------------------------------------
    def compare(self, op: str, x: str, y: str) -> Dfa:
        """{(x, y) : x op y}; identical names give the diagonal."""
        key = ("cmp", op)
        base = self._cache.get(key)
        if base is None:
            ns = self.ns
            eq, lt = ns.equality_relation(), ns.less_than_relation()
            gt = rename(lt, {"x": "y", "y": "x"})
            base = {"=": eq, "!=": complement(eq), "<": lt, ">": gt,
                    "<=": complement(gt), ">=": complement(lt)}[op]
            self._cache[key] = base
        return rename(base, {"x": x, "y": y})

    def scale(self, k: int, x: str, y: str) -> Dfa:
        """{(x, y) : y = k x}, built by doubling and adding."""
        return rename(self._scale(k), {"x": x, "y": y})

    def _scale(self, k: int) -> Dfa:
        key = ("scale", k)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        ns = self.ns
        add = ns.addition_relation()
        if k == 0:
            res = product(ns.constant(0, "y"), validity(ns, ("x",)), "and")
        elif k == 1:
            res = ns.equality_relation()
        else:
            half = self._scale(k // 2)
            # h = (k//2) x, then y = h + h (+ x when k is odd)
            hk = rename(half, {"y": "h"})
            if k % 2 == 0:
                step = rename(add, {"x": "h", "y": "h", "z": "y"})
                res = exists(product(hk, step, "and"), "h")
            else:
                step = rename(add, {"x": "h", "y": "h", "z": "g"})
                two = exists(product(hk, step, "and"), "h")
                step2 = rename(add, {"x": "g", "y": "x", "z": "y"})
                res = exists(product(two, step2, "and"), "g")
        self._cache[key] = res
        return res

    def sequence_relation(self, op: str, left: str, x: str, right: str | None, y: str | None,
                          letter: int | None = None) -> Dfa:
        """{(x, y) : left[x] op right[y]} or {x : left[x] op letter}."""
        if right is None:
            key = ("seqlet", left, op, letter)
            base = self._cache.get(key)
            if base is None:
                d = self.sequences[left]
                if letter not in set(d.alphabet):
                    raise CompileError(f"letter {letter} is not an output of {left}")
                base = self._seq_product([d], ("x",), lambda o: _CMP[op](o[0], letter))
                self._cache[key] = base
            return rename(base, {"x": x})
        key = ("seqseq", left, right, op)
        base = self._cache.get(key)
        if base is None:
            d1, d2 = self.sequences[left], self.sequences[right]
            base = self._seq_product([d1, d2], ("x", "y"), lambda o: _CMP[op](o[0], o[1]))
            self._cache[key] = base
        return rename(base, {"x": x, "y": y})

    def _seq_product(self, dfaos, tracks, cmp) -> Dfa:
        ns = self.ns
        v = validity(ns, tracks)
        vs, _ = _sinks(v.delta, v.accepting)
        comps = [_Component((t,), d.delta, d.initial) for d, t in zip(dfaos, tracks)]
        comps.append(_Component(v.tracks, v.delta, v.initial, vs))
        outs = [d.outputs for d in dfaos]
        vacc = v.accepting

        def accept(parts):
            vals = [o[p] for o, p in zip(outs, parts)]
            return cmp(vals) & vacc[parts[-1]]

        delta, acc, init = _explore_product(comps, tracks, accept, "sequence comparison")
        return minimize(Dfa._raw(tracks, delta, acc, init, ns))

    # -- terms -------------------------------------------------------------
    def term(self, t: Term) -> tuple[str, Dfa | None]:
        """Track holding the value of ``t`` and the relation defining it (None for a variable)."""
        if isinstance(t, Var):
            return t.name, None
        if isinstance(t, Const):
            f = self.fresh()
            return f, self.ns.constant(t.value, f)
        if isinstance(t, (Add, Sub)):
            a, A = self.term(t.left)
            b, B = self.term(t.right)
            t0 = time.perf_counter()
            s = self.fresh()
            if isinstance(t, Add):
                rel = rename(self.ns.addition_relation(), {"x": a, "y": b, "z": s})
            else:
                rel = rename(self.ns.addition_relation(), {"x": b, "y": s, "z": a})
            rel = self._join(rel, [(a, A), (b, B)])
            return s, self._record(t, rel, t0)
        if isinstance(t, Mul):
            a, A = self.term(t.term)
            t0 = time.perf_counter()
            s = self.fresh()
            rel = self._join(self.scale(t.factor, a, s), [(a, A)])
            return s, self._record(t, rel, t0)
        raise CompileError(f"not a term: {t!r}")

    def _join(self, rel: Dfa, parts) -> Dfa:
        """Conjoin the defining relations of operands and project their auxiliaries."""
        for name, R in parts:
            if R is not None:
                rel = product(rel, R, "and")
        aux = [name for name, R in parts if R is not None]
        return exists(rel, list(dict.fromkeys(aux)))

    # -- formulas ------------------------------------------------------------
    def formula(self, f: Formula) -> Dfa:
        try:
            return self._formula(f)
        except ResourceError as e:
            if e.label is None:
                e.label = str(f)
            raise

    def _formula(self, f: Formula) -> Dfa:
        if isinstance(f, BoolConst):
            t0 = time.perf_counter()
            return self._record(f, Dfa.constant(f.value, self.ns), t0)
        if isinstance(f, Atom):
            return self.atom(f)
        if isinstance(f, Call):
            return self.call(f)
        if isinstance(f, Not):
            a = self.formula(f.body)
            t0 = time.perf_counter()
            return self._record(f, complement(a), t0)
        if isinstance(f, (And, Or, Implies, Iff)):
            a = self.formula(f.left)
            b = self.formula(f.right)
            t0 = time.perf_counter()
            op = {And: "and", Or: "or", Implies: "implies", Iff: "iff"}[type(f)]
            return self._record(f, product(a, b, op), t0)
        if isinstance(f, Exists):
            a = self.formula(f.body)
            t0 = time.perf_counter()
            return self._record(f, exists(a, list(f.vars), label=str(f)), t0)
        if isinstance(f, Forall):
            a = self.formula(f.body)
            t0 = time.perf_counter()
            res = complement(exists(complement(a), list(f.vars), label=str(f)))
            return self._record(f, res, t0)
        raise CompileError(f"not a formula: {f!r}")

    def call(self, f: Call) -> Dfa:
        pred = self.predicates.get(f.name)
        if pred is None:
            raise CompileError(f"unknown predicate ${f.name}")
        if len(f.args) != len(pred.free_tracks):
            raise CompileError(f"${f.name} takes {len(pred.free_tracks)} arguments "
                               f"({', '.join(pred.free_tracks)}), got {len(f.args)}")
        parts = [self.term(a) for a in f.args]
        t0 = time.perf_counter()
        # park the predicate's own names on fresh tracks first so they cannot collide
        tmp = {t: self.fresh() for t in pred.free_tracks}
        a = rename(pred.dfa, tmp)
        a = rename(a, {tmp[t]: x for t, (x, _) in zip(pred.free_tracks, parts)})
        return self._record(f, self._join(a, parts), t0)

    def atom(self, f: Atom) -> Dfa:
        left, right, op = f.left, f.right, f.op
        if isinstance(right, Index) and not isinstance(left, Index):
            left, right, op = right, left, _FLIP[op]
        if isinstance(left, Index):
            for ix in (left, right):
                if isinstance(ix, Index) and ix.seq not in self.sequences:
                    raise CompileError(f"unknown sequence {ix.seq!r}")
            x, X = self.term(left.index)
            if isinstance(right, Index):
                y, Y = self.term(right.index)
                t0 = time.perf_counter()
                base = self.sequence_relation(op, left.seq, x, right.seq, y)
                parts = [(x, X), (y, Y)]
            elif isinstance(right, Const):
                t0 = time.perf_counter()
                base = self.sequence_relation(op, left.seq, x, None, None, letter=right.value)
                parts = [(x, X)]
            else:
                raise CompileError(f"cannot compare a letter of {left.seq} with the number {right}")
            return self._record(f, self._join(base, parts), t0)
        x, X = self.term(left)
        y, Y = self.term(right)
        t0 = time.perf_counter()
        rel = self._join(self.compare(op, x, y), [(x, X), (y, Y)])
        return self._record(f, rel, t0)


def compile_formula(f: Formula | str, ns: NumerationSystem,
                    sequences: Mapping[str, Dfao] | None = None,
                    budget: int | None = None,
                    predicates: Mapping[str, CompiledPredicate] | None = None) -> CompiledPredicate:
    """Build the minimal automaton of all free-variable assignments satisfying ``f``.

    Free variables are ordered by first appearance; ``$name(...)`` calls use
    that order for the arguments of a previously compiled predicate.
    """
    if isinstance(f, str):
        f = parse(f, sequences=(sequences or {}).keys())
    comp = Compiler(ns, sequences, predicates)
    t0 = time.perf_counter()
    with track_peak() as peak:
        if budget is None:
            dfa = comp.formula(f)
        else:
            with state_budget(budget):
                dfa = comp.formula(f)
        free = tuple(free_var_order(f))
        if set(dfa.tracks) != set(free):
            dfa = cylindrify(dfa, free)
    return CompiledPredicate(f, dfa, free, comp.log, peak.states,
                             (time.perf_counter() - t0) * 1000)

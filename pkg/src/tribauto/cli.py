"""Command-line front end: an interactive session, batch scripts and the corpus runner.

Session commands, one per line (``#`` starts a comment):

    def <name> := <query>              compile and print the construction log
    load <file.nsd>                    switch numeration system
    seq <NAME> morphic <a->w ...> [coding <a->b ...>]
    seq <NAME> map <OTHER> <a->b ...>  letter-to-letter image of a sequence
    export dot|aut|linrep <name> <path>
    enumerate <name> <limit>
    count <name> by <track>            linear representation counting the other tracks
    corpus run [id ...] [--skip-slow]
    quit
"""
from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import TextIO

from .automata import DEFAULT_BUDGET, ResourceError, dumps, to_dot
from .enumeration import LinRep, linrep_from_dfa, minimize_linrep
from .logic import CompiledPredicate, CompileError, QuerySyntaxError, compile_formula, parse
from .numeration import NsdError, NumerationSystem, load_numeration, tribonacci_system
from .word import (LearningError, Morphism, binary_dfao, dfao_map, learn_dfao, morphic_array,
                   tribonacci_dfao, verify_dfao)

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class CommandError(Exception):
    pass


ENGINE_ERRORS = (CommandError, QuerySyntaxError, CompileError, ResourceError, NsdError,
                 LearningError, OSError, ValueError, KeyError)


@dataclass
class Session:
    ns: NumerationSystem = field(default_factory=tribonacci_system)
    sequences: dict = field(default_factory=dict)
    predicates: dict[str, CompiledPredicate] = field(default_factory=dict)
    linreps: dict[str, LinRep] = field(default_factory=dict)
    budget: int = DEFAULT_BUDGET
    times: bool = True
    jobs: int = 1
    out: TextIO = field(default_factory=lambda: sys.stdout)
    failed: bool = False  # set when a corpus case fails

    def __post_init__(self):
        if not self.sequences:
            self.sequences = {"TR": tribonacci_dfao(), "B": binary_dfao()}

    def say(self, text: str = "") -> None:
        print(text, file=self.out)

    # -- dispatch ------------------------------------------------------------
    def execute(self, line: str) -> bool:
        """Run one command; returns False on ``quit``."""
        line = line.split("#", 1)[0].strip()
        if not line:
            return True
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        handler = getattr(self, f"cmd_{word}", None)
        if handler is None:
            raise CommandError(f"unknown command {word!r}")
        return handler(rest) is not False

    def cmd_quit(self, rest):
        return False

    cmd_exit = cmd_quit

    def cmd_def(self, rest):
        name, sep, query = rest.partition(":=")
        name = name.strip()
        if not sep or not name.isidentifier():
            raise CommandError("usage: def <name> := <query>")
        f = parse(query, sequences=self.sequences.keys())
        p = compile_formula(f, self.ns, self.sequences, self.budget, self.predicates)
        self.predicates[name] = p
        self.say(p.format_log(self.times))
        tracks = ", ".join(p.free_tracks) or "no free variables"
        extra = f", {'true' if p.dfa.truth else 'false'}" if not p.free_tracks else ""
        self.say(f"{name}({tracks}): {p.dfa.num_states} states, largest intermediate "
                 f"{p.peak}{extra}")

    def cmd_load(self, rest):
        if not rest:
            raise CommandError("usage: load <file.nsd>")
        self.ns = load_numeration(rest)
        self.say(f"numeration system {self.ns.name}")

    def cmd_seq(self, rest):
        parts = rest.split()
        if len(parts) < 3:
            raise CommandError("usage: seq <NAME> morphic <a->w ...> | seq <NAME> map <OTHER> <a->b ...>")
        name, kind, args = parts[0], parts[1], parts[2:]
        if not name[:1].isupper():
            raise CommandError("sequence names start with an uppercase letter")
        if kind == "morphic":
            if "coding" in args:
                k = args.index("coding")
                images, coding = _pairs(args[:k]), _pairs(args[k + 1:])
                coding = {a: int(b) for a, b in coding.items()}
            else:
                images, coding = _pairs(args), None
            m = Morphism({a: tuple(int(c) for c in w) for a, w in images.items()},
                         start=min(images), coding=coding)
            oracle = morphic_array(m, 200_000)
            d = learn_dfao(oracle, self.ns)
            bad = verify_dfao(d, oracle)
            if bad is not None:
                raise CommandError(f"learned automaton disagrees with the word at n = {bad}")
        elif kind == "map":
            src = self.sequences.get(args[0])
            if src is None:
                raise CommandError(f"unknown sequence {args[0]}")
            d = dfao_map(src, {a: int(b) for a, b in _pairs(args[1:]).items()})
        else:
            raise CommandError(f"unknown sequence kind {kind!r}")
        self.sequences[name] = d
        self.say(f"{name}: {d.num_states} states, outputs {sorted(set(map(int, d.outputs)))}")

    def cmd_export(self, rest):
        parts = rest.split()
        if len(parts) != 3 or parts[0] not in ("dot", "aut", "linrep"):
            raise CommandError("usage: export dot|aut|linrep <name> <path>")
        fmt, name, path = parts
        if fmt == "linrep":
            if name not in self.linreps:
                raise CommandError(f"no linear representation named {name}; use count first")
            text = self.linreps[name].dumps()
        else:
            obj = self.predicates[name].dfa if name in self.predicates else self.sequences.get(name)
            if obj is None:
                raise CommandError(f"nothing named {name}")
            text = to_dot(obj, name) if fmt == "dot" else dumps(obj)
        Path(path).write_text(text)
        self.say(f"wrote {path}")

    def cmd_enumerate(self, rest):
        parts = rest.split()
        if len(parts) != 2:
            raise CommandError("usage: enumerate <name> <limit>")
        p = self._pred(parts[0])
        vals = p.values(limit=int(parts[1]))
        self.say(f"{parts[0]}({', '.join(p.free_tracks)}):")
        for v in vals:
            self.say(" ".join(map(str, v)))

    def cmd_count(self, rest):
        parts = rest.split()
        if len(parts) != 3 or parts[1] != "by":
            raise CommandError("usage: count <name> by <track>")
        p = self._pred(parts[0])
        track = parts[2]
        if track not in p.free_tracks:
            raise CommandError(f"{track} is not a free variable of {parts[0]}")
        others = [t for t in p.free_tracks if t != track]
        r = linrep_from_dfa(p.dfa, others, track)
        m = minimize_linrep(r)
        self.linreps[parts[0]] = m
        vals = m.eval_range(12)
        self.say(f"{parts[0]}: rank {r.rank}, minimized rank {m.rank}")
        self.say("first values: " + " ".join(str(v) for v in vals))

    def cmd_corpus(self, rest):
        from .corpus import format_table, run_all
        args = rest.split()
        if not args or args[0] != "run":
            raise CommandError("usage: corpus run [id ...] [--skip-slow]")
        skip = "--skip-slow" in args
        ids = [int(a) for a in args[1:] if a != "--skip-slow"] or None
        t0 = time.perf_counter()
        reports = run_all(skip_slow=skip, jobs=self.jobs, budget=self.budget, ids=ids,
                          progress=lambda r: self.say(r.line()))
        self.say(format_table(reports, times=self.times))
        if self.times:
            self.say(f"corpus time: {time.perf_counter() - t0:.1f}s")
        if not all(r.passed for r in reports):
            self.failed = True

    def _pred(self, name):
        p = self.predicates.get(name)
        if p is None:
            raise CommandError(f"no predicate named {name}")
        return p


def _pairs(args) -> dict[int, str]:
    out = {}
    for a in args:
        for item in a.split(","):
            if not item:
                continue
            lhs, sep, rhs = item.partition("->")
            if not sep:
                lhs, sep, rhs = item.partition(":")
            if not sep or not lhs.isdigit() or not rhs.isdigit():
                raise CommandError(f"expected a->w, got {item!r}")
            out[int(lhs)] = rhs
    return out


def run_lines(session: Session, lines, interactive: bool = False) -> int:
    for lineno, line in enumerate(lines, 1):
        try:
            if not session.execute(line):
                break
        except ENGINE_ERRORS as e:
            where = "" if interactive else f"line {lineno}: "
            msg = f"{where}error: {e}"
            if isinstance(e, ResourceError) and e.label:
                msg += f"\n  while building: {e.label}"
            print(msg, file=sys.stderr)
            if not interactive:
                return EXIT_ERROR
    return EXIT_FAIL if session.failed else EXIT_OK


def repl(session: Session) -> int:
    interactive = sys.stdin.isatty()
    if not interactive:
        return run_lines(session, sys.stdin)
    status = EXIT_OK
    while True:
        try:
            line = input("> ")
        except EOFError:
            break
        try:
            if not session.execute(line):
                break
        except ENGINE_ERRORS as e:
            print(f"error: {e}", file=sys.stderr)
            status = EXIT_ERROR
    return EXIT_FAIL if session.failed else status


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tribauto", description=__doc__.split("\n")[0])
    ap.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                    help="largest automaton allowed during determinization")
    ap.add_argument("--jobs", type=int, default=1, help="parallel corpus cases")
    ap.add_argument("--no-times", action="store_true", help="print 0ms for every timing")
    ap.add_argument("--numeration", help="numeration system definition file")
    ap.add_argument("--skip-slow", action="store_true", help="corpus run: skip the slow cases")
    ap.add_argument("-e", "--execute", action="append", default=[], metavar="CMD",
                    help="run a command (repeatable) instead of a script")
    ap.add_argument("args", nargs="*",
                    help="a script path, or 'corpus run [id ...]'; empty for an interactive session")
    return ap


def main(argv=None) -> int:
    opts = build_parser().parse_args(argv)
    try:
        ns = load_numeration(opts.numeration) if opts.numeration else tribonacci_system()
    except (NsdError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    session = Session(ns=ns, budget=opts.budget, times=not opts.no_times, jobs=opts.jobs)
    if opts.execute:
        return run_lines(session, opts.execute)
    if opts.args[:1] == ["corpus"]:
        cmd = " ".join(opts.args) + (" --skip-slow" if opts.skip_slow else "")
        return run_lines(session, [cmd])
    if opts.args:
        if len(opts.args) > 1:
            print("error: expected a single script path", file=sys.stderr)
            return EXIT_ERROR
        try:
            text = Path(opts.args[0]).read_text()
        except OSError as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_ERROR
        return run_lines(session, text.splitlines())
    return repl(session)


if __name__ == "__main__":
    sys.exit(main())

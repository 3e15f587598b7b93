"""Abstract syntax, parser and printer for the query language.

Grammar, loosest binding first::

    formula  := iff
    iff      := implies ('<=>' implies)*
    implies  := or ('=>' implies)?              right associative
    or       := and ('|' and)*
    and      := unary ('&' unary)*
    unary    := '~' unary | QUANT vars unary-to-end | atom
    atom     := '(' formula ')' | operand CMP operand | 'true' | 'false'
    operand  := term | SEQ '[' term ']'
    term     := prod (('+' | '-') prod)*
    prod     := factor ('*' factor)*            one side must be a constant
    factor   := NUMBER | var | '(' term ')'

A quantifier is ``E`` or ``A`` followed by one or more comma-separated
variables, either attached (``Ei``) or separated by a space (``E i, j``).  Its
scope extends as far right as possible.  Variables start with a lowercase
letter; sequence names start with an uppercase letter.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Union


class QuerySyntaxError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos
        self.text = text


# ---------------------------------------------------------------------------
# terms

@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    value: int

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Add:
    left: "Term"
    right: "Term"

    def __str__(self):
        return f"{_term_str(self.left, 1)} + {_term_str(self.right, 2)}"


@dataclass(frozen=True)
class Sub:
    """Relational difference: defined only where left >= right."""
    left: "Term"
    right: "Term"

    def __str__(self):
        return f"{_term_str(self.left, 1)} - {_term_str(self.right, 2)}"


@dataclass(frozen=True)
class Mul:
    factor: int
    term: "Term"

    def __str__(self):
        return f"{self.factor} * {_term_str(self.term, 3)}"


Term = Union[Var, Const, Add, Sub, Mul]


def _term_level(t) -> int:
    if isinstance(t, (Add, Sub)):
        return 1
    if isinstance(t, Mul):
        return 2
    return 3


def _term_str(t, need: int) -> str:
    s = str(t)
    return f"({s})" if _term_level(t) < need else s


@dataclass(frozen=True)
class Index:
    seq: str
    index: Term

    def __str__(self):
        return f"{self.seq}[{self.index}]"


# ---------------------------------------------------------------------------
# formulas

CMP_OPS = ("=", "!=", "<", "<=", ">", ">=")


@dataclass(frozen=True)
class Atom:
    op: str
    left: Union[Term, Index]
    right: Union[Term, Index]

    def __str__(self):
        return f"{self.left} {self.op} {self.right}"


@dataclass(frozen=True)
class BoolConst:
    value: bool

    def __str__(self):
        return "true" if self.value else "false"


@dataclass(frozen=True)
class Call:
    """Reference to a previously compiled predicate, applied to terms."""
    name: str
    args: tuple

    def __str__(self):
        return f"${self.name}({', '.join(map(str, self.args))})"


@dataclass(frozen=True)
class Not:
    body: "Formula"

    def __str__(self):
        return show(self)


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return show(self)


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return show(self)


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return show(self)


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return show(self)


@dataclass(frozen=True)
class Exists:
    vars: tuple[str, ...]
    body: "Formula"

    def __str__(self):
        return show(self)


@dataclass(frozen=True)
class Forall:
    vars: tuple[str, ...]
    body: "Formula"

    def __str__(self):
        return show(self)


Formula = Union[Atom, BoolConst, Call, Not, And, Or, Implies, Iff, Exists, Forall]

# binding level of each connective and the levels its operands must reach
_BINARY = {And: (5, "&", 5, 6), Or: (4, "|", 4, 5),
           Implies: (3, "=>", 4, 3), Iff: (2, "<=>", 2, 3)}


def _level(f) -> int:
    if isinstance(f, (Atom, BoolConst, Call)):
        return 7
    if isinstance(f, Not):
        return 6
    if type(f) in _BINARY:
        return _BINARY[type(f)][0]
    return 1


def _wrap(f, need: int, tail: bool) -> str:
    lvl = _level(f)
    if lvl == 1 and tail:
        return show(f, True)  # a trailing quantifier can run to the end
    if lvl < need:
        return f"({show(f, True)})"
    return show(f, tail)


def show(f, tail: bool = True) -> str:
    """Print with the fewest parentheses that reparse to the same tree.

    ``tail`` says nothing follows ``f`` in the enclosing text, which is
    what lets a quantifier appear unparenthesized.
    """
    if isinstance(f, (Atom, BoolConst, Call)):
        return str(f)
    if isinstance(f, Not):
        return "~" + _wrap(f.body, 6, tail)
    if type(f) in _BINARY:
        _, sym, lneed, rneed = _BINARY[type(f)]
        return f"{_wrap(f.left, lneed, False)} {sym} {_wrap(f.right, rneed, tail)}"
    q = "E" if isinstance(f, Exists) else "A"
    return f"{q}{','.join(f.vars)} {show(f.body, True)}"


def free_vars(f) -> set[str]:
    if isinstance(f, Var):
        return {f.name}
    if isinstance(f, Const) or isinstance(f, BoolConst):
        return set()
    if isinstance(f, (Add, Sub)):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, Mul):
        return free_vars(f.term)
    if isinstance(f, Index):
        return free_vars(f.index)
    if isinstance(f, Atom):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, Call):
        return set().union(*map(free_vars, f.args))
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, (And, Or, Implies, Iff)):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, (Exists, Forall)):
        return free_vars(f.body) - set(f.vars)
    raise TypeError(f"not a formula: {f!r}")


def free_var_order(f) -> list[str]:
    """Free variables in order of first appearance."""
    out: list[str] = []

    def walk(g, bound):
        if isinstance(g, Var):
            if g.name not in bound and g.name not in out:
                out.append(g.name)
        elif isinstance(g, (Add, Sub, Atom, And, Or, Implies, Iff)):
            walk(g.left, bound)
            walk(g.right, bound)
        elif isinstance(g, Mul):
            walk(g.term, bound)
        elif isinstance(g, Index):
            walk(g.index, bound)
        elif isinstance(g, Call):
            for a in g.args:
                walk(a, bound)
        elif isinstance(g, Not):
            walk(g.body, bound)
        elif isinstance(g, (Exists, Forall)):
            walk(g.body, bound | set(g.vars))

    walk(f, frozenset())
    return out


def sequences_of(f) -> set[str]:
    if isinstance(f, Index):
        return {f.seq}
    if isinstance(f, Atom):
        return sequences_of(f.left) | sequences_of(f.right)
    if isinstance(f, Not):
        return sequences_of(f.body)
    if isinstance(f, (And, Or, Implies, Iff)):
        return sequences_of(f.left) | sequences_of(f.right)
    if isinstance(f, (Exists, Forall)):
        return sequences_of(f.body)
    return set()


# ---------------------------------------------------------------------------
# tokenizer

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z][A-Za-z0-9_']*)
  | (?P<op><=>|=>|<=|>=|!=|[=<>~&|+\-*()\[\],!$])
""", re.VERBOSE)

_VAR = re.compile(r"[a-z][A-Za-z0-9_']*")


@dataclass
class Tok:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Tok]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise QuerySyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Tok(kind, m.group(), pos))
        pos = m.end()
    out.append(Tok("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, sequences: Iterable[str] | None):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.sequences = set(sequences) if sequences is not None else None

    # helpers
    @property
    def tok(self) -> Tok:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg: str, tok: Tok | None = None):
        tok = tok or self.tok
        found = tok.text or "end of input"
        raise QuerySyntaxError(f"{msg} (found {found!r})", tok.pos, self.text)

    def accept(self, *texts: str) -> Tok | None:
        if self.tok.kind == "op" and self.tok.text in texts:
            t = self.tok
            self.i += 1
            return t
        return None

    def expect(self, text: str) -> Tok:
        t = self.accept(text)
        if t is None:
            self.error(f"expected {text!r}")
        return t

    # formulas
    def parse(self):
        f = self.iff()
        if self.tok.kind != "eof":
            self.error("unexpected token")
        return f

    def iff(self):
        f = self.implies()
        while self.accept("<=>"):
            f = Iff(f, self.implies())
        return f

    def implies(self):
        f = self.disj()
        if self.accept("=>"):
            return Implies(f, self.implies())
        return f

    def disj(self):
        f = self.conj()
        while self.accept("|"):
            f = Or(f, self.conj())
        return f

    def conj(self):
        f = self.unary()
        while self.accept("&"):
            f = And(f, self.unary())
        return f

    def _quantifier(self):
        t = self.tok
        if t.kind != "ident" or t.text[0] not in "EA":
            return None
        if len(t.text) > 1:
            rest = t.text[1:]
            if not _VAR.fullmatch(rest):
                return None
            if self.peek().kind == "op" and self.peek().text == "[":
                return None
            self.i += 1
            names = [rest]
        else:
            nxt = self.peek()
            if nxt.kind != "ident" or not _VAR.fullmatch(nxt.text):
                return None
            self.i += 2
            names = [nxt.text]
        while self.accept(","):
            v = self.tok
            if v.kind != "ident" or not _VAR.fullmatch(v.text):
                self.error("expected a variable name")
            names.append(v.text)
            self.i += 1
        return t.text[0], tuple(names)

    def unary(self):
        if self.accept("~", "!"):
            return Not(self.unary())
        q = self._quantifier()
        if q is not None:
            kind, names = q
            body = self.iff()
            return Exists(names, body) if kind == "E" else Forall(names, body)
        return self.atom()

    def atom(self):
        t = self.tok
        if t.kind == "op" and t.text == "$":
            return self.call()
        if t.kind == "ident" and t.text in ("true", "false") and not (
                self.peek().kind == "op" and self.peek().text in CMP_OPS):
            self.i += 1
            return BoolConst(t.text == "true")
        if t.kind == "op" and t.text == "(":
            start = self.i
            try:
                return self.comparison()
            except QuerySyntaxError as first:
                self.i = start
                self.expect("(")
                try:
                    f = self.iff()
                    self.expect(")")
                except QuerySyntaxError as second:
                    raise (second if second.pos >= first.pos else first) from None
                return f
        return self.comparison()

    def call(self):
        self.expect("$")
        name = self.tok
        if name.kind != "ident":
            self.error("expected a predicate name")
        self.i += 1
        self.expect("(")
        args = []
        if not self.accept(")"):
            args.append(self.term())
            while self.accept(","):
                args.append(self.term())
            self.expect(")")
        return Call(name.text, tuple(args))

    def comparison(self):
        left = self.operand()
        t = self.tok
        if t.kind != "op" or t.text not in CMP_OPS:
            self.error("expected a comparison operator")
        self.i += 1
        right = self.operand()
        return Atom(t.text, left, right)

    def operand(self):
        t = self.tok
        if t.kind == "ident" and t.text[0].isupper():
            if not (self.peek().kind == "op" and self.peek().text == "["):
                self.error("expected '[' after sequence name", self.peek())
            if self.sequences is not None and t.text not in self.sequences:
                raise QuerySyntaxError(f"unknown sequence name {t.text!r}", t.pos, self.text)
            self.i += 2
            idx = self.term()
            self.expect("]")
            return Index(t.text, idx)
        return self.term()

    def term(self):
        t = self.prod()
        while True:
            if self.accept("+"):
                t = Add(t, self.prod())
            elif self.accept("-"):
                t = Sub(t, self.prod())
            else:
                return t

    def prod(self):
        start = self.tok
        t = self.factor()
        while True:
            op = self.accept("*")
            if op is None:
                return t
            rhs = self.factor()
            if isinstance(t, Const):
                t = Mul(t.value, rhs) if not isinstance(rhs, Const) else Const(t.value * rhs.value)
            elif isinstance(rhs, Const):
                t = Mul(rhs.value, t)
            else:
                raise QuerySyntaxError("non-constant multiplication", op.pos, self.text)

    def factor(self):
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return Const(int(t.text))
        if t.kind == "ident" and _VAR.fullmatch(t.text):
            self.i += 1
            return Var(t.text)
        if self.accept("("):
            inner = self.term()
            self.expect(")")
            return inner
        self.error("expected a term")


def parse(text: str, sequences: Iterable[str] | None = None) -> Formula:
    """Parse a query.  If ``sequences`` is given, unknown sequence names are errors."""
    return _Parser(text, sequences).parse()


def parse_term(text: str) -> Term:
    p = _Parser(text, None)
    t = p.term()
    if p.tok.kind != "eof":
        p.error("unexpected token")
    return t

"""Linear representations of Tribonacci-regular sequences, with exact arithmetic.

A representation (u, M0, M1, v) defines a(n) = u . M_{x1} ... M_{xk} . v where
x1...xk is the canonical representation of n read from the most
significant digit.  Entries are Python ints or Fractions held in numpy
object arrays; nothing here touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .automata import Dfa
from .automata.core import _coreachable, _reachable_mask
from .numeration import NumerationSystem, tribonacci, tribonacci_system


def _obj(a) -> np.ndarray:
    arr = np.empty(np.shape(a), dtype=object)
    arr[...] = a
    return arr


def _simplify(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


def _zero_vec(d: int) -> np.ndarray:
    return _obj([0] * d)


@dataclass(frozen=True, eq=False)
class LinRep:
    u: np.ndarray          # shape (d,)
    M0: np.ndarray         # shape (d, d)
    M1: np.ndarray
    v: np.ndarray          # shape (d,)
    ns: NumerationSystem | None = field(default=None, repr=False)

    def __post_init__(self):
        for name in ("u", "M0", "M1", "v"):
            object.__setattr__(self, name, _obj(getattr(self, name)))
        d = self.rank
        if self.M0.shape != (d, d) or self.M1.shape != (d, d) or self.v.shape != (d,):
            raise ValueError("inconsistent shapes in linear representation")

    @property
    def rank(self) -> int:
        return int(self.u.shape[0])

    def mu(self, bit: int) -> np.ndarray:
        return self.M1 if bit else self.M0

    def eval_word(self, bits: Iterable[int]):
        if self.rank == 0:
            return 0
        row = self.u
        for b in bits:
            row = row.dot(self.mu(b))
        return _simplify(row.dot(self.v))

    def __call__(self, n: int):
        ns = self.ns or tribonacci_system()
        return self.eval_word(ns.rep(n))

    def eval_range(self, count: int) -> list:
        """a(0), ..., a(count-1), sharing work across common prefixes."""
        ns = self.ns or tribonacci_system()
        out = []
        cache: dict[tuple, np.ndarray] = {(): self.u}
        for n in range(count):
            w = ns.rep(n)
            row = cache.get(w[:-1]) if w else self.u
            if row is None:
                row = self.u
                for b in w[:-1]:
                    row = row.dot(self.mu(b))
                cache[w[:-1]] = row
            if w:
                row = row.dot(self.mu(w[-1]))
            out.append(_simplify(row.dot(self.v)) if self.rank else 0)
            if n % 4096 == 0 and len(cache) > 50000:
                cache = {(): self.u}
        return out

    def dumps(self) -> str:
        def fmt(x):
            x = Fraction(x)
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        lines = [f"rank {self.rank}", "u " + " ".join(map(fmt, self.u))]
        for name in ("M0", "M1"):
            lines.append(name)
            lines.extend(" ".join(map(fmt, row)) for row in getattr(self, name))
        lines.append("v")
        lines.extend(fmt(x) for x in self.v)
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str, ns=None) -> "LinRep":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        d = int(lines[0].split()[1])
        num = lambda s: _simplify(Fraction(s))  # noqa: E731
        u = [num(x) for x in lines[1].split()[1:]]
        pos = 2

        def block(tag, rows):
            nonlocal pos
            if lines[pos] != tag:
                raise ValueError(f"expected {tag!r}, found {lines[pos]!r}")
            pos += 1
            out = [[num(x) for x in lines[pos + i].split()] for i in range(rows)]
            pos += rows
            return out

        M0 = block("M0", d)
        M1 = block("M1", d)
        v = [r[0] for r in block("v", d)]
        return cls(_obj(u), _obj(M0) if d else np.empty((0, 0), object),
                   _obj(M1) if d else np.empty((0, 0), object), _obj(v), ns)


# ---------------------------------------------------------------------------
# exact linear algebra over Q

class _Span:
    """Incrementally built basis with coordinates of reduced vectors."""

    def __init__(self, dim: int):
        self.dim = dim
        self.vectors: list[np.ndarray] = []
        self._rows: list[tuple[int, np.ndarray, np.ndarray]] = []  # pivot, echelon row, combo

    def _reduce(self, x: np.ndarray):
        x = x.copy()
        combo = _zero_vec(len(self.vectors))
        for p, r, c in self._rows:
            f = x[p]
            if f != 0:
                x = x - f * r
                combo[: c.shape[0]] = combo[: c.shape[0]] + f * c
        return x, combo

    def add(self, x) -> bool:
        x = _obj(x)
        res, combo = self._reduce(x)
        nz = [i for i, e in enumerate(res) if e != 0]
        if not nz:
            return False
        p = nz[0]
        piv = Fraction(res[p])
        k = len(self.vectors)
        self.vectors.append(x)
        c = _obj(list(-combo / piv) + [1 / piv])
        self._rows.append((p, _obj([_simplify(Fraction(e) / piv) for e in res]),
                           _obj([_simplify(e) for e in c])))
        return True

    def coords(self, x) -> np.ndarray:
        res, combo = self._reduce(_obj(x))
        if any(e != 0 for e in res):
            raise ValueError("vector outside the span")
        return _obj([_simplify(e) for e in combo])


def _right_span(r: LinRep) -> _Span:
    sp = _Span(r.rank)
    queue = [r.v]
    while queue:
        x = queue.pop(0)
        if sp.add(x):
            queue.append(r.M0.dot(x))
            queue.append(r.M1.dot(x))
    return sp


def _left_span(r: LinRep) -> _Span:
    sp = _Span(r.rank)
    queue = [r.u]
    while queue:
        x = queue.pop(0)
        if sp.add(x):
            queue.append(x.dot(r.M0))
            queue.append(x.dot(r.M1))
    return sp


def _empty(ns) -> LinRep:
    e = np.empty((0, 0), dtype=object)
    return LinRep(np.empty(0, object), e, e.copy(), np.empty(0, object), ns)


def minimize_linrep(r: LinRep) -> LinRep:
    """Minimal-rank representation of the same series (right then left reduction)."""
    if r.rank == 0:
        return r
    # restrict to the span of {mu(w) v}
    R = _right_span(r)
    B = R.vectors
    k = len(B)
    if k == 0:
        return _empty(r.ns)
    Bm = _obj(np.array(B, dtype=object).T)  # d x k
    M0 = _obj(np.array([R.coords(r.M0.dot(b)) for b in B], dtype=object).T)
    M1 = _obj(np.array([R.coords(r.M1.dot(b)) for b in B], dtype=object).T)
    r1 = LinRep(r.u.dot(Bm), M0, M1, R.coords(r.v), r.ns)
    # then to the span of {u mu(w)}
    L = _left_span(r1)
    C = L.vectors
    if not C:
        return _empty(r.ns)
    Cm = _obj(np.array(C, dtype=object))  # j x k
    N0 = _obj(np.array([L.coords(c.dot(r1.M0)) for c in C], dtype=object))
    N1 = _obj(np.array([L.coords(c.dot(r1.M1)) for c in C], dtype=object))
    return LinRep(L.coords(r1.u), N0, N1, Cm.dot(r1.v), r.ns)


def difference(r: LinRep, s: LinRep) -> LinRep:
    d, e = r.rank, s.rank

    def block(A, B):
        out = _obj(np.zeros((d + e, d + e), dtype=object))
        out[:d, :d] = A
        out[d:, d:] = B
        return out

    u = _obj(list(r.u) + [-x for x in s.u])
    v = _obj(list(r.v) + list(s.v))
    return LinRep(u, block(r.M0, s.M0), block(r.M1, s.M1), v, r.ns or s.ns)


@dataclass
class Comparison:
    equal: bool
    witness: int | None = None

    def __bool__(self):
        return self.equal


def linrep_equal(r: LinRep, s: LinRep, horizon: int = 200) -> Comparison:
    """Exact equality of the two series; a disagreeing n is reported when one is found."""
    a, b = r.eval_range(horizon), s.eval_range(horizon)
    for n, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return Comparison(False, n)
    if minimize_linrep(difference(r, s)).rank == 0:
        return Comparison(True)
    return Comparison(False, None)


# ---------------------------------------------------------------------------
# building representations

def linrep_from_dfa(a: Dfa, count_tracks: Sequence[str], param_track: str,
                    max_shift: int = 64, stabilize: bool = True) -> LinRep:
    """Count, for each parameter value, the count-track tuples accepted by ``a``.

    Transfer matrices are built on the trimmed automaton: entry (p, q) of
    M_b counts the count-track columns leading from p to q while the
    parameter track reads b.  Because a witness may need more digits than
    the parameter, the initial row is replaced by u M0^k for the first k
    after which extra leading zeros no longer change any value.
    """
    count_tracks = tuple(count_tracks)
    if set(a.tracks) != set(count_tracks) | {param_track} or param_track in count_tracks:
        raise ValueError(f"tracks {a.tracks} do not split into {param_track} and {count_tracks}")
    keep = _reachable_mask(a.delta, a.initial) & _coreachable(a.delta, a.accepting)
    ns = a.ns
    if not keep[a.initial]:
        return _empty(ns)
    idx = np.full(a.num_states, -1, dtype=np.int64)
    states = np.flatnonzero(keep)
    idx[states] = np.arange(states.size)
    d = states.size
    pbit = a.tracks.index(param_track)
    r = a.arity
    mats = [np.zeros((d, d), dtype=np.int64), np.zeros((d, d), dtype=np.int64)]
    for s in range(1 << r):
        b = (s >> (r - 1 - pbit)) & 1
        src = states
        dst = idx[a.delta[states, s]]
        ok = dst >= 0
        np.add.at(mats[b], (idx[src[ok]], dst[ok]), 1)
    u = [0] * d
    u[int(idx[a.initial])] = 1
    v = [int(x) for x in a.accepting[states]]
    rep = LinRep(_obj(u), _obj(mats[0].tolist()), _obj(mats[1].tolist()), _obj(v), ns)
    return stabilize_leading_zeros(rep, max_shift) if stabilize else rep


def stabilize_leading_zeros(r: LinRep, max_shift: int = 64) -> LinRep:
    """Replace u by u M0^k for the least k with (u M0^k - u M0^(k+1)) orthogonal to all mu(w) v."""
    if r.rank == 0:
        return r
    R = _right_span(r).vectors
    u = r.u
    for _ in range(max_shift + 1):
        nxt = u.dot(r.M0)
        diff = u - nxt
        if all(diff.dot(b) == 0 for b in R):
            return LinRep(u, r.M0, r.M1, r.v, r.ns)
        u = nxt
    raise ValueError(f"leading zeros did not stabilize within {max_shift} steps")


def value_linrep(ns: NumerationSystem | None = None) -> LinRep:
    """n -> [w]_T for every word w, from the shift identity of Tribonacci place values.

    The row (x, y, z, 1) holds the value of w with places T_{i+2}, T_{i+1}, T_i;
    appending digit b gives (x+y+z+b, x+b, y, 1).
    """
    M = []
    for b in (0, 1):
        M.append([[1, 1, 0, 0], [1, 0, 1, 0], [1, 0, 0, 0], [b, b, 0, 1]])
    return LinRep(_obj([0, 0, 0, 1]), _obj(M[0]), _obj(M[1]), _obj([1, 0, 0, 0]), ns)


def hadamard(r: LinRep, s: LinRep) -> LinRep:
    """Pointwise product of two series (Kronecker product of representations)."""
    return LinRep(_obj(np.kron(r.u, s.u)), _obj(np.kron(r.M0, s.M0)), _obj(np.kron(r.M1, s.M1)),
                  _obj(np.kron(r.v, s.v)), r.ns or s.ns)


def indicator_linrep(a: Dfa) -> LinRep:
    """Characteristic series of a single-track automaton."""
    if a.arity != 1:
        raise ValueError("indicator needs a single-track automaton")
    n = a.num_states
    mats = [np.zeros((n, n), dtype=np.int64) for _ in range(2)]
    for b in (0, 1):
        mats[b][np.arange(n), a.delta[:, b]] = 1
    u = [0] * n
    u[a.initial] = 1
    return LinRep(_obj(u), _obj(mats[0].tolist()), _obj(mats[1].tolist()),
                  _obj([int(x) for x in a.accepting]), a.ns)


def affine_linrep(slope, intercept, ns: NumerationSystem | None = None) -> LinRep:
    """slope * n + intercept on valid representations, 0 on words containing 111."""
    ns = ns or tribonacci_system()
    base = value_linrep(ns)
    v = _obj([slope * x for x in base.v])
    v[3] = v[3] + intercept
    affine = LinRep(base.u, base.M0, base.M1, v, ns)
    return minimize_linrep(hadamard(affine, indicator_linrep(ns.valid_words(("n",)))))


# ---------------------------------------------------------------------------
# polynomials

@dataclass(frozen=True)
class Polynomial:
    coeffs: tuple  # ascending degree

    def __post_init__(self):
        c = [_simplify(Fraction(x)) for x in self.coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs != (0,) else -1

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Polynomial(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                                for i in range(n)))

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(tuple(out))

    def __pow__(self, k: int) -> "Polynomial":
        out = Polynomial((1,))
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        terms = []
        for k, c in reversed(list(enumerate(self.coeffs))):
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            coef = str(c) if (c not in (1, -1) or k == 0) else ("-" if c == -1 else "")
            terms.append(f"{coef}{mono}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


def annihilates(p: Polynomial, M: np.ndarray) -> bool:
    """Exact test of p(M) = 0 by Horner's rule."""
    M = _obj(M)
    d = M.shape[0]
    eye = _obj(np.eye(d, dtype=np.int64).tolist()) if d else M
    acc = _obj(np.zeros((d, d), dtype=np.int64).tolist()) if d else M
    for c in reversed(p.coeffs):
        acc = acc.dot(M) + c * eye
    return all(x == 0 for x in acc.ravel())


# ---------------------------------------------------------------------------
# closed forms in 1, n, T_n, T_{n-1}, T_{n-2}, n T_n, ... and residues mod 3

def _basis_functions() -> dict[str, Callable[[int], int]]:
    return {
        "1": lambda n: 1,
        "n": lambda n: n,
        "T_n": lambda n: tribonacci(n),
        "T_{n-1}": lambda n: tribonacci(n - 1),
        "T_{n-2}": lambda n: tribonacci(n - 2),
        "n T_n": lambda n: n * tribonacci(n),
        "n T_{n-1}": lambda n: n * tribonacci(n - 1),
        "n T_{n-2}": lambda n: n * tribonacci(n - 2),
        "[n = 0 mod 3]": lambda n: int(n % 3 == 0),
        "[n = 1 mod 3]": lambda n: int(n % 3 == 1),
        "[n = 2 mod 3]": lambda n: int(n % 3 == 2),
    }


BASIS = ("1", "n", "T_n", "T_{n-1}", "T_{n-2}", "n T_n", "n T_{n-1}", "n T_{n-2}")
BASIS_MOD3 = ("[n = 0 mod 3]", "[n = 1 mod 3]", "[n = 2 mod 3]", "n", "T_n", "T_{n-1}",
              "T_{n-2}", "n T_n", "n T_{n-1}", "n T_{n-2}")
_RESIDUES = ("[n = 0 mod 3]", "[n = 1 mod 3]", "[n = 2 mod 3]")


@dataclass(frozen=True)
class ClosedForm:
    coeffs: tuple[tuple[str, Fraction], ...]

    @classmethod
    def of(cls, mapping: Mapping[str, object]) -> "ClosedForm":
        fns = _basis_functions()
        items = []
        for k, c in mapping.items():
            if k not in fns:
                raise KeyError(f"unknown basis element {k!r}")
            c = Fraction(c)
            if c != 0:
                items.append((k, c))
        return cls(tuple(items)).normalized()

    def as_dict(self) -> dict[str, Fraction]:
        return dict(self.coeffs)

    def normalized(self) -> "ClosedForm":
        """Fold equal residue-class coefficients into the constant term."""
        d = dict(self.coeffs)
        res = [d.get(k, Fraction(0)) for k in _RESIDUES]
        if any(k in d for k in _RESIDUES) and res[0] == res[1] == res[2]:
            for k in _RESIDUES:
                d.pop(k, None)
            d["1"] = d.get("1", Fraction(0)) + res[0]
        order = list(BASIS) + list(_RESIDUES)
        items = tuple((k, d[k]) for k in order if k in d and d[k] != 0)
        return ClosedForm(items)

    def __call__(self, n: int) -> Fraction:
        fns = _basis_functions()
        return sum((c * fns[k](n) for k, c in self.coeffs), Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClosedForm):
            return NotImplemented
        return self.normalized().coeffs == other.normalized().coeffs

    def __hash__(self):
        return hash(self.normalized().coeffs)

    def __str__(self) -> str:
        parts = []
        for k, c in self.normalized().coeffs:
            parts.append(f"{c}" if k == "1" else f"({c}) {k}")
        return " + ".join(parts) or "0"


@dataclass
class FitResult:
    form: ClosedForm | None
    residual_free: bool
    samples: int
    message: str = ""

    def __bool__(self):
        return self.form is not None and self.residual_free


def solve_exact(A: list[list], b: list) -> list[Fraction] | None:
    """Unique solution of an overdetermined consistent system, else None."""
    m = len(A)
    k = len(A[0]) if m else 0
    rows = [[Fraction(x) for x in A[i]] + [Fraction(b[i])] for i in range(m)]
    piv_cols = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if p is None:
            return None  # rank deficient: not unique
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(rows[i][k] != 0 for i in range(r, m)):
        return None  # inconsistent
    return [rows[i][k] for i in range(k)]


def fit_closed_form(values: Mapping[int, object], basis: Sequence[str] = BASIS,
                    fit_window: int | None = None) -> FitResult:
    """Exact rational fit; samples past the fit window must be reproduced exactly."""
    ns_ = sorted(values)
    fns = _basis_functions()
    k = len(basis)
    window = ns_[: fit_window or max(2 * k, k + 4)]
    A = [[fns[e](n) for e in basis] for n in window]
    sol = solve_exact(A, [values[n] for n in window])
    if sol is None:
        return FitResult(None, False, len(ns_), "no unique exact fit on the window")
    form = ClosedForm.of(dict(zip(basis, sol)))
    bad = [n for n in ns_ if form(n) != values[n]]
    if bad:
        return FitResult(form, False, len(ns_), f"fit fails at n = {bad[0]}")
    return FitResult(form, True, len(ns_))


def values_at_tribonacci(r: LinRep, indices: Iterable[int]) -> dict[int, object]:
    """a(T_n) for each n, evaluated on the words 1 0^(n-2)."""
    out = {}
    for n in indices:
        out[n] = r.eval_word((1,) + (0,) * (n - 2)) if n >= 2 else r.eval_word(())
    return out

"""The theorem catalogue: queries, expectations and the runner.

A case is data: named queries (compiled in order, later ones may call
earlier ones with ``$name(...)``) and a list of checks against them.
Expected languages are kept as regular expressions, never as automaton dumps.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from ..automata import (DEFAULT_BUDGET, Dfa, ResourceError, complement, enumerate_values, exists,
                        is_empty, language_equal, product, regex_to_dfa, reorder, validity)
from ..enumeration import (BASIS_MOD3, ClosedForm, LinRep, fit_closed_form, linrep_from_dfa,
                           values_at_tribonacci)
from ..logic import CompiledPredicate, compile_formula
from ..numeration import NumerationSystem, tribonacci, tribonacci_system
from ..word import binary_dfao, binary_word, tribonacci_dfao
from . import oracles

CRITICAL_EXPONENT = "3.19148788395311874706"


# ---------------------------------------------------------------------------
# context and results

class CaseContext:
    """Numeration system, sequences and the predicates compiled so far."""

    def __init__(self, ns: NumerationSystem | None = None, budget: int = DEFAULT_BUDGET,
                 sequences=None):
        self.ns = ns or tribonacci_system()
        self.budget = budget
        self.sequences = dict(sequences) if sequences is not None else {
            "TR": tribonacci_dfao(), "B": binary_dfao()}
        self.predicates: dict[str, CompiledPredicate] = {}
        self.cache: dict = {}

    def compile(self, name: str, query: str) -> CompiledPredicate:
        hit = self.predicates.get(name)
        if hit is None:
            hit = compile_formula(query, self.ns, self.sequences, self.budget, self.predicates)
            self.predicates[name] = hit
        return hit

    def section(self, name: str, **fixed: int) -> Dfa:
        """The named relation with some tracks fixed to constants and projected away."""
        a = self.predicates[name].dfa
        for t, v in fixed.items():
            a = product(a, self.ns.constant(v, t), "and")
        return exists(a, list(fixed))


@dataclass
class CheckResult:
    label: str
    passed: bool
    witness: object = None
    detail: str = ""

    def __str__(self):
        s = f"{'ok  ' if self.passed else 'FAIL'} {self.label}"
        if self.detail:
            s += f": {self.detail}"
        if not self.passed and self.witness is not None:
            s += f" (witness {self.witness})"
        return s


@dataclass
class OracleReport:
    case_id: int
    name: str
    passed: bool
    witness: object = None
    checks: list[CheckResult] = field(default_factory=list)
    seconds: float = 0.0
    peak: int = 0
    error: str | None = None

    def line(self) -> str:
        """Machine-readable form: ``case_id status witness?``."""
        s = f"{self.case_id} {'pass' if self.passed else 'fail'}"
        if not self.passed:
            w = self.error if self.error else self.witness
            if w is not None:
                s += f" {w}"
        return s


# ---------------------------------------------------------------------------
# checks

def _scalar(vals):
    return {v[0] if len(v) == 1 else v for v in vals}


def _first_difference(a: Dfa, b: Dfa):
    diff = product(a, reorder(b, a.tracks), "xor")
    vals = enumerate_values(diff, limit=1)
    return vals[0] if vals else None


@dataclass(frozen=True)
class IsEmpty:
    pred: str

    def __call__(self, ctx: CaseContext) -> CheckResult:
        a = ctx.predicates[self.pred].dfa
        ok = is_empty(a)
        w = None if ok else enumerate_values(a, limit=1)[0]
        return CheckResult(f"{self.pred} accepts nothing", ok, w, f"{a.num_states} states")


@dataclass(frozen=True)
class IsUniversal:
    pred: str
    bound: int

    def __call__(self, ctx: CaseContext) -> CheckResult:
        p = ctx.predicates[self.pred]
        everything = validity(ctx.ns, p.dfa.tracks)
        ok = language_equal(p.dfa, everything)
        w = None if ok else _first_difference(p.dfa, everything)
        got = _scalar(p.values_up_to(self.bound))
        dec = got == set(range(self.bound + 1))
        if ok and not dec:
            w = min(set(range(self.bound + 1)) - got)
        return CheckResult(f"{self.pred} accepts every value (decoded to {self.bound})",
                           ok and dec, w)


@dataclass(frozen=True)
class MatchesRegex:
    pred: str
    regex: str

    def __call__(self, ctx: CaseContext) -> CheckResult:
        a = ctx.predicates[self.pred].dfa
        if a.arity != 1:
            return CheckResult(f"{self.pred} is {self.regex}", False, None, "not a one-track relation")
        want = regex_to_dfa(self.regex, a.tracks[0], ctx.ns)
        ok = language_equal(a, want)
        return CheckResult(f"{self.pred} is {self.regex}", ok,
                           None if ok else _first_difference(a, want))


@dataclass(frozen=True)
class StateCount:
    """Size of the minimal automaton; ``live`` leaves out the dead state."""
    pred: str
    states: int
    live: bool = False

    def __call__(self, ctx: CaseContext) -> CheckResult:
        a = ctx.predicates[self.pred].dfa
        n = a.live_count() if self.live else a.num_states
        kind = "live states" if self.live else "states"
        return CheckResult(f"{self.pred} has {self.states} {kind}", n == self.states, n,
                           f"{a.num_states} states, {a.live_count()} live")


@dataclass(frozen=True)
class DecodedEquals:
    pred: str
    bound: int
    expected: Callable[[int], set]
    source: str
    start: int = 0   # ignore single values below this

    def __call__(self, ctx: CaseContext) -> CheckResult:
        got = _scalar(ctx.predicates[self.pred].values_up_to(self.bound))
        want = {v for v in self.expected(self.bound)
                if (v if isinstance(v, int) else max(v)) <= self.bound}
        if self.start:
            got = {v for v in got if v >= self.start}
            want = {v for v in want if v >= self.start}
        diff = sorted(got ^ want)
        return CheckResult(f"{self.pred} decoded to {self.bound} equals {self.source}",
                           not diff, diff[0] if diff else None, f"{len(got)} values")


@dataclass(frozen=True)
class Custom:
    label: str
    fn: Callable[[CaseContext], tuple]

    def __call__(self, ctx: CaseContext) -> CheckResult:
        ok, witness, detail = self.fn(ctx)
        return CheckResult(self.label, bool(ok), witness, detail)


@dataclass(frozen=True)
class NumericLimit:
    label: str
    value: Callable[[CaseContext], Fraction]
    target: str
    tol: float

    def __call__(self, ctx: CaseContext) -> CheckResult:
        v = self.value(ctx)
        err = abs(Fraction(v) - Fraction(self.target))
        return CheckResult(self.label, err <= Fraction(self.tol), float(v),
                           f"{float(v):.15f}, error {float(err):.2e}")


@dataclass(frozen=True)
class TheoremCase:
    id: int
    name: str
    topic: str
    queries: tuple[tuple[str, str], ...]
    checks: tuple
    slow: bool = False


# ---------------------------------------------------------------------------
# expected sets and derived quantities

def _tribs(lo: int, hi: int) -> set[int]:
    return {tribonacci(n) for n in range(lo, hi + 1)}


def _square_orders_formula(bound):
    out = set()
    for n in range(2, 60):
        out |= {tribonacci(n), tribonacci(n) + tribonacci(n - 1)}
    return {v for v in out if v <= bound}


def _pal_prefix_formula(bound):
    vals = {0} | {(tribonacci(i) + tribonacci(i + 2) - 3) // 2 for i in range(2, 21)}
    return {v for v in vals if v <= bound}


def _quasi_formula(bound):
    U = {2: 0, 3: 1, 4: 3}
    out, n = set(), 5
    while tribonacci(n) <= bound:
        U[n] = U[n - 1] + U[n - 2] + U[n - 3] + 3
        out |= set(range(tribonacci(n), min(U[n], bound) + 1))
        n += 1
    return out


def single_value(ctx: CaseContext, name: str, **fixed) -> int | None:
    vals = enumerate_values(ctx.section(name, **fixed), limit=2)
    if len(vals) != 1:
        return None
    return vals[0][0]


def max_period_lengths(ctx: CaseContext, js: Sequence[int]) -> dict[int, int]:
    """U_j: length of the longest factor with period T_j, read off the automaton."""
    out = {}
    for j in js:
        p = tribonacci(j)
        run = single_value(ctx, "maxrun", p=p)
        out[j] = None if run is None else p + run
    return out


def _u_closed(j):
    return Fraction(5, 2) * tribonacci(j) + tribonacci(j - 1) + Fraction(1, 2) * tribonacci(j - 2) \
        - Fraction(3, 2)


def _check_u_closed(ctx):
    U = max_period_lengths(ctx, range(2, 26))
    bad = [j for j, u in U.items() if u != _u_closed(j)]
    return not bad, (bad[0], U[bad[0]]) if bad else None, "U_2..U_25 = " + \
        ", ".join(str(U[j]) for j in range(2, 8)) + ", ..."


def _check_u_oracle(ctx):
    U = max_period_lengths(ctx, range(2, 13))
    bad = [j for j in U if U[j] != oracles.maximal_period_length(tribonacci(j))]
    return not bad, bad[0] if bad else None, "longest periodic runs in a prefix, j <= 12"


def _ratio(ctx, j):
    return Fraction(max_period_lengths(ctx, [j])[j], tribonacci(j))


def _check_cubic(ctx):
    # the iterate far out is the computed limit; successive iterates must have settled
    x, prev = _ratio(ctx, 80), _ratio(ctx, 79)
    val = 2 * x ** 3 - 12 * x ** 2 + 22 * x - 13
    settled = abs(x - prev) < Fraction(1, 10 ** 12)
    return settled and abs(val) < Fraction(1, 10 ** 9), float(val), \
        f"2x^3-12x^2+22x-13 = {float(val):.2e} at U_80/T_80, |U_80/T_80 - U_79/T_79| = {float(abs(x - prev)):.1e}"


def initial_exponents(ctx: CaseContext, js: Sequence[int]) -> dict[int, Fraction]:
    """n/p for the longest prefix whose least period is p = T_j."""
    out = {}
    for j in js:
        p = tribonacci(j)
        n = single_value(ctx, "top", p=p)
        out[j] = Fraction(n, p) if n is not None else None
    return out


def _ice_estimate(ctx):
    return max(initial_exponents(ctx, range(2, 31)).values())


def _least_periods_expected(bound):
    lp = oracles.least_periods(bound)
    return {(int(lp[n]), n) for n in range(1, bound + 1)}


def _tops_expected(bound):
    lp = oracles.least_periods(bound + 200)
    last = {}
    for n in range(1, bound + 200 + 1):
        last[int(lp[n])] = n
    return {(p, n) for p, n in last.items() if n <= bound and p <= bound}


def _check_b_run(ctx):
    b = binary_word(200000)
    run = int(oracles.runs(b, 2).max())
    ok = 2 + run == 13
    return ok, run, f"longest factor of b with period 2 has length {2 + run}"


def abelian_formulas(bound: int, ns: NumerationSystem | None = None) -> np.ndarray:
    """Rows (c0, c1, c2) from the digit-shift formulas, n = 0..bound."""
    ns = ns or tribonacci_system()
    out = np.zeros((bound + 1, 3), dtype=np.int64)
    for n in range(bound + 1):
        e = (0, 0, 0) + ns.rep(n)  # leading zeros so that j >= 3
        j = len(e)
        for c in range(3):
            head = e[: j - 1 - c]
            out[n, c] = ns.value_of(head) + e[j - 1 - c]
    return out


def _check_abelian(ctx, bound=100_000):
    got = abelian_formulas(bound, ctx.ns)
    want = oracles.parikh_table(bound)
    bad = np.flatnonzero((got != want).any(axis=1))
    return not len(bad), int(bad[0]) if len(bad) else None, f"n <= {bound}"


# -- occurrence counts ---------------------------------------------------

SQUARE_COUNT = ClosedForm.of({
    "n T_n": Fraction(9, 22), "n T_{n-1}": Fraction(-1, 22), "n T_{n-2}": Fraction(-5, 22),
    "T_n": Fraction(-117, 44), "T_{n-1}": Fraction(30, 44), "T_{n-2}": Fraction(33, 44),
    "n": 1, "1": Fraction(-7, 4)})
CUBE_COUNT = ClosedForm.of({
    "T_n": Fraction(1, 44), "T_{n-1}": Fraction(2, 44), "T_{n-2}": Fraction(-33, 44),
    "n T_n": Fraction(-6, 22), "n T_{n-1}": Fraction(8, 22), "n T_{n-2}": Fraction(7, 22),
    "n": Fraction(1, 6), "[n = 0 mod 3]": Fraction(-1, 4), "[n = 1 mod 3]": Fraction(1, 12),
    "[n = 2 mod 3]": Fraction(-7, 12)})


def occurrence_linrep(ctx: CaseContext, name: str) -> LinRep:
    key = ("linrep", name)
    if key not in ctx.cache:
        ctx.cache[key] = linrep_from_dfa(ctx.predicates[name].dfa, ["i", "j"], "n")
    return ctx.cache[key]


def _check_count(name, power, form, start, rank):
    def fn(ctx):
        r = occurrence_linrep(ctx, name)
        vals = values_at_tribonacci(r, range(start, 60))
        fit = fit_closed_form(vals, BASIS_MOD3, fit_window=20)
        brute = {m: oracles.occurrence_count(tribonacci(m), power) for m in range(start, 15)}
        bad = [m for m in brute if vals[m] != brute[m]]
        ok = bool(fit) and fit.form == form and not bad and r.rank == rank
        w = None
        if bad:
            w = ("brute force", bad[0])
        elif not fit or fit.form != form:
            w = str(fit.form)
        return ok, w, f"rank {r.rank}, fit {fit.form}"
    return fn


# ---------------------------------------------------------------------------
# the catalogue

SQUARE_POSITIONS = "n > 0 & Aj (i <= j & j < i + n) => TR[j] = TR[j + n]"
CUBE_POSITIONS = "n > 0 & Aj (i <= j & j < i + 2 * n) => TR[j] = TR[j + n]"
SQUARE_OCCURRENCES = "j >= 1 & i + 2 * j <= n & Au (u >= i & u < i + j) => TR[u] = TR[u + j]"
CUBE_OCCURRENCES = "j >= 1 & i + 3 * j <= n & Au (u >= i & u < i + 2 * j) => TR[u] = TR[u + j]"
SUBWORD_COMPLEXITY = ("Ak (k > 0 & k <= i) => Eu u + k >= i & u + k < i + n & "
                      "TR[u] != TR[u + k]")

CASES: tuple[TheoremCase, ...] = (
    TheoremCase(1, "aperiodic", "no suffix of the word is periodic",
                (("aperiodic", "p >= 1 & En Ai i >= n => TR[i] = TR[i + p]"),),
                (IsEmpty("aperiodic"),)),
    TheoremCase(2, "fourth-powers", "no fourth powers",
                (("fourth", "n > 0 & Ei Aj (j >= i & j < i + 3 * n) => TR[j] = TR[j + n]"),),
                (IsEmpty("fourth"),)),
    TheoremCase(3, "square-orders", "orders of squares",
                (("squares", "n > 0 & Ei Aj (i <= j & j < i + n) => TR[j] = TR[j + n]"),),
                (MatchesRegex("squares", "10*+110*"), StateCount("squares", 4),
                 DecodedEquals("squares", tribonacci(12), _square_orders_formula,
                               "{T_n, T_n + T_(n-1)}"),
                 DecodedEquals("squares", tribonacci(12),
                               lambda b: oracles.power_orders(20000, b, 2), "brute-force scan"))),
    TheoremCase(4, "square-positions", "orders and starting positions of squares",
                (("square_at", SQUARE_POSITIONS),),
                (StateCount("square_at", 10, live=True),
                 DecodedEquals("square_at", 400, lambda b: oracles.power_positions(b, 2),
                               "brute-force pairs"))),
    TheoremCase(5, "cube-orders", "orders of cubes",
                (("cubes", "n > 0 & Ei Aj (i <= j & j < i + 2 * n) => TR[j] = TR[j + n]"),),
                (MatchesRegex("cubes", "(1000)0*"),
                 DecodedEquals("cubes", tribonacci(15), lambda b: _tribs(5, 15), "{T_n : n >= 5}"),
                 DecodedEquals("cubes", 1000, lambda b: oracles.power_orders(20000, b, 3),
                               "brute-force scan"))),
    TheoremCase(6, "cube-positions", "orders and starting positions of cubes",
                (("cube_at", CUBE_POSITIONS),),
                (DecodedEquals("cube_at", 400, lambda b: oracles.power_positions(b, 3),
                               "brute-force pairs"),)),
    TheoremCase(7, "palindromes", "palindromes of every length",
                (("even_pal", "Ei i >= n & Aj j < n => TR[i + j] = TR[i - 1 - j]"),
                 ("odd_pal", "Ei i >= n & Aj (1 <= j & j <= n) => TR[i + j] = TR[i - j]")),
                (IsUniversal("even_pal", 10_000), IsUniversal("odd_pal", 10_000),
                 Custom("palindromes of every length up to 2*10^4 + 1 in a prefix scan",
                        lambda ctx: (lambda s: (set(range(20_002)) <= s, None, f"longest {max(s)}"))(
                            oracles.palindrome_lengths(100_000)))),
                slow=True),
    TheoremCase(8, "palindromic-prefixes", "lengths of palindromic prefixes",
                (("pal_prefix", "Ai i < n => TR[i] = TR[n - 1 - i]"),),
                (MatchesRegex("pal_prefix", "ε+1+11+10(010)*(00+001+0011)"),
                 DecodedEquals("pal_prefix", (tribonacci(20) + tribonacci(22) - 3) // 2,
                               _pal_prefix_formula, "(T_i + T_(i+2) - 3)/2"),
                 DecodedEquals("pal_prefix", 5000, oracles.palindromic_prefixes,
                               "brute-force scan"))),
    TheoremCase(9, "quasiperiods", "lengths of prefixes that are quasiperiods",
                (("quasi", "n > 0 & Ai Ej (j <= i & i < j + n) & At t < n => TR[t] = TR[j + t]"),),
                (DecodedEquals("quasi", 2000, _quasi_formula, "{T_n..U_n : n >= 5}"),
                 DecodedEquals("quasi", 2000, oracles.quasiperiod_lengths, "covering scan"))),
    TheoremCase(10, "unbordered", "lengths of unbordered factors",
                (("unbordered", "Ei At (n <= 2 * t & t < n) => Eu u >= i & u < i + n - t & "
                                "TR[u] != TR[u + t]"),),
                (DecodedEquals("unbordered", 2000, lambda b: {0} | oracles.oracle_scan(b, "unbordered"),
                               "border scan"),),
                slow=True),
    TheoremCase(11, "lyndon", "lengths of Lyndon factors",
                (("lyndon", "Ei Aj (1 <= j & j < n) => Et t + j < n & (Au (i <= u & u < i + t) "
                            "=> TR[u] = TR[u + j]) & TR[i + t] < TR[i + j + t]"),),
                (DecodedEquals("lyndon", 1000, lambda b: oracles.oracle_scan(b, "lyndon"),
                               "border scan", start=1),),
                slow=True),
    TheoremCase(12, "critical-exponent", "longest factors with period T_j",
                (("run", "Ei Au (u >= i & u < i + n) => TR[u] = TR[u + p]"),
                 ("maxrun", "p >= 1 & $run(n, p) & ~$run(n + 1, p)")),
                (Custom("U_j = (5T_j + 2T_(j-1) + T_(j-2) - 3)/2 for 2 <= j <= 25", _check_u_closed),
                 Custom("U_j agrees with a brute-force scan", _check_u_oracle),
                 NumericLimit("U_30/T_30 near the critical exponent", lambda c: _ratio(c, 30),
                              CRITICAL_EXPONENT, 1e-6),
                 Custom("the limit is a root of 2x^3-12x^2+22x-13", _check_cubic)),
                slow=True),
    TheoremCase(13, "initial-critical-exponent", "least periods of prefixes",
                (("per", "Au u + p < n => TR[u] = TR[u + p]"),
                 ("lp", "p >= 1 & n >= 1 & $per(p, n) & Aq (q >= 1 & q < p) => ~$per(q, n)"),
                 ("top", "$lp(p, n) & Am m > n => ~$lp(p, m)")),
                (DecodedEquals("lp", 600, _least_periods_expected, "prefix-function scan"),
                 DecodedEquals("top", 600, _tops_expected, "prefix-function scan"),
                 NumericLimit("sup of prefix exponents up to p = T_30 near rho - 1", _ice_estimate,
                              str(Fraction(CRITICAL_EXPONENT) - 1), 1e-4))),
    TheoremCase(14, "power-prefixes", "prefixes that are powers",
                (("power_prefix", "Ed (d >= 1 & d < n) & (Aj j + d < n => TR[j] = TR[d + j]) & "
                                  "(Ak k < d => TR[k] = TR[n - d + k])"),),
                (MatchesRegex("power_prefix", "100010*"),
                 DecodedEquals("power_prefix", 10_000, lambda b: {2 * t for t in _tribs(5, 40)
                                                                  if 2 * t <= b}, "{2 T_n : n >= 5}"),
                 DecodedEquals("power_prefix", 10_000, oracles.power_prefixes, "least-period scan"))),
    TheoremCase(15, "binary-word", "critical exponent of the binary projection",
                # a run of n equal pairs at distance p is a factor of length n + p with
                # period p, so exponent (n + p)/p against 13/2 reads 2n against 11p
                (("brun", "Ei Au (u >= i & u < i + n) => B[u] = B[u + p]"),
                 ("b_at", "p >= 1 & $brun(n, p) & 2 * n = 11 * p"),
                 ("b_over", "p >= 1 & $brun(n, p) & 2 * n > 11 * p"),
                 ("b_witness", "Ei Au (u >= i & u + 2 < i + 13) => B[u] = B[u + 2]")),
                (Custom("a factor of length 13 with period 2 exists",
                        lambda ctx: (ctx.predicates["b_witness"].dfa.truth, None, "")),
                 DecodedEquals("b_at", 1000, lambda b: {(2, 11)}, "period 2 only"),
                 IsEmpty("b_over"),
                 Custom("brute-force run of period 2", _check_b_run)),
                slow=True),
    TheoremCase(16, "abelian", "letter counts of prefixes from digit shifts",
                (), (Custom("digit-shift formulas agree with letter counting", _check_abelian),)),
    TheoremCase(17, "occurrence-counts", "counting occurrences of squares and cubes",
                (("square_occ", SQUARE_OCCURRENCES), ("cube_occ", CUBE_OCCURRENCES)),
                (Custom("square occurrences fit the closed form",
                        _check_count("square_occ", 2, SQUARE_COUNT, 5, 63)),
                 Custom("cube occurrences fit the closed form",
                        _check_count("cube_occ", 3, CUBE_COUNT, 3, 46)))),
)

CASES_BY_ID = {c.id: c for c in CASES}


# ---------------------------------------------------------------------------
# running

def run_case(case: TheoremCase | int, ctx: CaseContext | None = None) -> OracleReport:
    """Compile the case's queries and evaluate every check; failures never raise."""
    if isinstance(case, int):
        case = CASES_BY_ID[case]
    ctx = ctx or CaseContext()
    t0 = time.perf_counter()
    rep = OracleReport(case.id, case.name, False)
    try:
        for name, query in case.queries:
            p = ctx.compile(name, query)
            rep.peak = max(rep.peak, p.peak)
        for check in case.checks:
            rep.checks.append(check(ctx))
    except ResourceError as e:
        rep.error = f"resource limit: {e}"
    except Exception as e:  # report, keep going with other cases
        rep.error = f"{type(e).__name__}: {e}"
    rep.seconds = time.perf_counter() - t0
    failed = [c for c in rep.checks if not c.passed]
    rep.passed = rep.error is None and not failed
    if failed:
        rep.witness = failed[0].witness
    return rep


def _run_by_id(args):
    cid, budget = args
    return run_case(cid, CaseContext(budget=budget))


def run_all(skip_slow: bool = False, jobs: int = 1, budget: int = DEFAULT_BUDGET,
            ids: Sequence[int] | None = None, progress: Callable[[OracleReport], None] | None = None
            ) -> list[OracleReport]:
    chosen = [c for c in CASES if (ids is None or c.id in ids) and not (skip_slow and c.slow)]
    reports = []
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(jobs) as ex:
            for rep in ex.map(_run_by_id, [(c.id, budget) for c in chosen]):
                reports.append(rep)
                if progress:
                    progress(rep)
    else:
        for c in chosen:
            rep = run_case(c, CaseContext(budget=budget))
            reports.append(rep)
            if progress:
                progress(rep)
    return sorted(reports, key=lambda r: r.case_id)


def format_table(reports: Sequence[OracleReport], times: bool = True) -> str:
    rows = [f"{'id':>3}  {'case':<26}{'status':<8}{'time':>9}{'peak':>10}"]
    for r in reports:
        t = f"{r.seconds:>8.1f}s" if times else f"{'-':>9}"
        rows.append(f"{r.case_id:>3}  {r.name:<26}{'pass' if r.passed else 'FAIL':<8}"
                    f"{t}{r.peak:>10}")
        if r.error:
            rows.append(f"       {r.error}")
        for c in r.checks:
            rows.append(f"       {c}")
    n_ok = sum(r.passed for r in reports)
    rows.append(f"{n_ok}/{len(reports)} cases pass")
    return "\n".join(rows)

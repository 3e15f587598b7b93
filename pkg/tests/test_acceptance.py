"""End-to-end acceptance checks, one test per criterion.

Each test records a one-line verdict in RESULTS; the lines are printed as they
are produced (visible with -s) and again in the terminal summary.
"""
import resource
import subprocess
import sys
import time

import pytest

from tribauto.corpus import CASES, CaseContext, check_addition, run_case
from tribauto.corpus.cases import SUBWORD_COMPLEXITY, occurrence_linrep
from tribauto.enumeration import (Polynomial, affine_linrep, annihilates, linrep_equal,
                                  linrep_from_dfa, minimize_linrep)
from tribauto.numeration import addition_dfa, canonical_addition_dfa, tribonacci_system

RESULTS: dict[int, str] = {}

x = Polynomial.x()
one = Polynomial((1,))
TRIB = x ** 3 - x ** 2 - x - one
SQUARE_POLY = (x - one) ** 2 * (x ** 2 + x + one) ** 2 * TRIB ** 2
CUBE_POLY = x ** 4 * TRIB ** 2 * (x ** 2 + x + one) ** 2 * (x - one) ** 2
REPORTED_PEAK = 86_711


def record(k: int, passed: bool, detail: str) -> None:
    line = f"criterion {k:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
    RESULTS[k] = line
    print(line)


@pytest.fixture(scope="module")
def corpus():
    """Every case run once on its own context: case id -> (report, context)."""
    out = {}
    t0 = time.perf_counter()
    for case in CASES:
        ctx = CaseContext()
        out[case.id] = (run_case(case, ctx), ctx)
    out["seconds"] = time.perf_counter() - t0
    return out


def _cases_pass(corpus, ids):
    reps = [corpus[i][0] for i in ids]
    bad = [r.line() for r in reps if not r.passed]
    return not bad, "; ".join(bad) if bad else "cases " + ", ".join(map(str, ids)) + " pass"


def test_criterion_01_addition():
    ns = tribonacci_system()
    t0 = time.perf_counter()
    chk = check_addition(addition_dfa(), ns, bound=2000, samples=100)
    secs = time.perf_counter() - t0
    live = canonical_addition_dfa().live_count()
    ok = chk.exact and chk.sampled_rejected and live == 149 and secs < 30
    record(1, ok, f"{chk.pairs} pairs exact={chk.exact}, {chk.sampled} wrong sums rejected="
                  f"{chk.sampled_rejected}, canonical {live} states, {secs:.1f}s")
    assert ok, chk.witness


def test_criterion_02_aperiodic_and_fourth_powers(corpus):
    ok, detail = _cases_pass(corpus, [1, 2])
    peak = corpus[2][0].peak
    in_range = peak < 5_000_000 and REPORTED_PEAK / 10 <= peak <= REPORTED_PEAK * 10
    record(2, ok and in_range, f"{detail}; fourth-power peak {peak} (reported {REPORTED_PEAK})")
    assert ok and in_range


def test_criterion_03_squares(corpus):
    ok, detail = _cases_pass(corpus, [3, 4])
    sq = corpus[3][1].predicates["squares"].dfa
    pos = corpus[4][1].predicates["square_at"].dfa
    ok = ok and sq.num_states == 4 and pos.live_count() == 10
    record(3, ok, f"{detail}; final {sq.num_states} states, positions {pos.live_count()} states")
    assert ok


def test_criterion_04_cubes(corpus):
    ok, detail = _cases_pass(corpus, [5])
    record(4, ok, detail)
    assert ok


def test_criterion_05_palindromes(corpus):
    ok, detail = _cases_pass(corpus, [7, 8])
    record(5, ok, detail)
    assert ok


def test_criterion_06_factor_properties(corpus):
    ok, detail = _cases_pass(corpus, [9, 10, 11, 14])
    record(6, ok, detail)
    assert ok


def test_criterion_07_subword_complexity():
    ctx = CaseContext()
    p = ctx.compile("novel", SUBWORD_COMPLEXITY)
    r = minimize_linrep(linrep_from_dfa(p.dfa, ["i"], "n"))
    eq = linrep_equal(r, affine_linrep(2, 1))
    vals_ok = r.eval_range(10_001) == [2 * n + 1 for n in range(10_001)]
    ok = r.rank == 12 and bool(eq) and vals_ok
    record(7, ok, f"rank {r.rank}, equal to 2n+1: {bool(eq)}, values to 10^4: {vals_ok}")
    assert ok


def test_criterion_08_occurrence_counts(corpus):
    ok, detail = _cases_pass(corpus, [17])
    ctx = corpus[17][1]
    sq = occurrence_linrep(ctx, "square_occ")
    cu = occurrence_linrep(ctx, "cube_occ")
    cube_poly = annihilates(CUBE_POLY, cu.M0)
    square_poly = annihilates(SQUARE_POLY, sq.M0)
    # the representation carries a nilpotent part the stated polynomial omits
    square_x5 = annihilates(x ** 5 * SQUARE_POLY, sq.M0)
    square_min_x4 = annihilates(x ** 4 * SQUARE_POLY, minimize_linrep(sq).M0)
    record(8, ok and cube_poly and square_poly,
           f"{detail}; cube polynomial annihilates: {cube_poly}; stated square polynomial "
           f"annihilates: {square_poly} (x^5 times it: {square_x5}, x^4 times it on the "
           f"minimized rank-{minimize_linrep(sq).rank} M0: {square_min_x4})")
    # the parts that hold are asserted here; the stated square polynomial is tested below
    assert ok and cube_poly and square_x5 and square_min_x4


@pytest.mark.xfail(strict=True, reason="M0 of the square-occurrence representation also has "
                                       "a nilpotent part; x^5 times the stated polynomial is needed")
def test_criterion_08_stated_square_polynomial(corpus):
    sq = occurrence_linrep(corpus[17][1], "square_occ")
    assert sq.rank == 63
    assert annihilates(SQUARE_POLY, sq.M0)


def test_criterion_09_critical_exponent(corpus):
    ok, detail = _cases_pass(corpus, [12, 13])
    checks = [str(c) for i in (12, 13) for c in corpus[i][0].checks if "near" in c.label]
    record(9, ok, detail + "; " + "; ".join(checks))
    assert ok


def test_criterion_10_binary_word(corpus):
    ok, detail = _cases_pass(corpus, [15])
    record(10, ok, detail)
    assert ok


def test_criterion_11_abelian(corpus):
    ok, detail = _cases_pass(corpus, [16])
    record(11, ok, detail)
    assert ok


def test_criterion_12_end_to_end(corpus):
    n_pass = sum(corpus[c.id][0].passed for c in CASES)
    secs = corpus["seconds"]
    rss_gb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 2 ** 20
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "tribauto.cli", "corpus", "run", "--skip-slow"],
                          capture_output=True, text=True, timeout=600)
    fast = time.perf_counter() - t0
    fast_ok = proc.returncode == 0 and "cases pass" in proc.stdout
    ok = n_pass == len(CASES) and secs < 3600 and rss_gb <= 8 and fast_ok and fast < 300
    record(12, ok, f"{n_pass}/{len(CASES)} in {secs:.0f}s, max RSS {rss_gb:.2f} GB; "
                   f"--skip-slow tier {proc.stdout.strip().splitlines()[-2:]} in {fast:.0f}s")
    assert ok

"""Linear representations: extraction, evaluation, minimization and closed forms."""
from fractions import Fraction

import numpy as np
import pytest

from conftest import DATA
from tribauto.enumeration import (BASIS, ClosedForm, LinRep, Polynomial, affine_linrep,
                                  annihilates, fit_closed_form, linrep_equal, linrep_from_dfa,
                                  minimize_linrep, stabilize_leading_zeros, values_at_tribonacci)
from tribauto.logic import compile_formula
from tribauto.numeration import tribonacci
from tribauto.corpus.cases import SQUARE_COUNT, SQUARE_OCCURRENCES
from tribauto.corpus.oracles import occurrence_count

x = Polynomial.x()


@pytest.fixture(scope="module")
def printed():
    return LinRep.loads((DATA / "complexity_rank12.linrep").read_text())


@pytest.fixture(scope="module")
def square_occ(ns, sequences):
    p = compile_formula(SQUARE_OCCURRENCES, ns, sequences)
    return linrep_from_dfa(p.dfa, ["i", "j"], "n")


def test_printed_representation_is_2n_plus_1(printed):
    assert printed.rank == 12
    assert printed.eval_range(1001) == [2 * n + 1 for n in range(1001)]


def test_eval_at_zero(printed):
    assert printed(0) == printed.u.dot(printed.v)


def test_leading_zeros_after_stabilization(printed, ns):
    for n in range(0, 3000, 7):
        w = ns.rep(n)
        assert all(printed.eval_word((0,) * k + w) == printed(n) for k in range(4))


def test_serialization_round_trip(printed):
    again = LinRep.loads(printed.dumps())
    assert again.dumps() == printed.dumps()
    half = LinRep([Fraction(1, 2)], [[1]], [[2]], [1])
    assert LinRep.loads(half.dumps()).dumps() == half.dumps()


def test_minimize_printed_is_minimal(printed):
    m = minimize_linrep(printed)
    assert m.rank == 12
    assert minimize_linrep(m).rank == 12


def test_equal_to_independent_affine(printed):
    assert linrep_equal(printed, affine_linrep(2, 1))


def test_unequal_reports_witness(printed):
    cmp = linrep_equal(printed, affine_linrep(2, 2))
    assert not cmp and cmp.witness == 0
    cmp = linrep_equal(printed, affine_linrep(2, 1))
    assert cmp and cmp.witness is None


def test_zero_representation(ns, sequences):
    p = compile_formula("i < n & i > n", ns, sequences)
    r = linrep_from_dfa(p.dfa, ["i"], "n")
    assert r.rank == 0 and r(17) == 0
    z = LinRep([1, -1], [[1, 0], [0, 1]], [[1, 0], [0, 1]], [1, 1])
    assert minimize_linrep(z).rank == 0


def test_counting_below(ns, sequences):
    # number of i < n is n
    p = compile_formula("i < n", ns, sequences)
    r = linrep_from_dfa(p.dfa, ["i"], "n")
    assert r.eval_range(3000) == list(range(3000))
    assert minimize_linrep(r).eval_range(500) == list(range(500))


def test_square_occurrences_match_brute_force(square_occ):
    vals = values_at_tribonacci(square_occ, range(5, 15))
    assert all(vals[m] == occurrence_count(tribonacci(m), 2) for m in vals)
    small = square_occ.eval_range(400)
    assert small == [occurrence_count(n, 2) for n in range(400)]


def test_square_count_fit(square_occ):
    vals = values_at_tribonacci(square_occ, range(5, 61))
    fit = fit_closed_form(vals, BASIS)
    assert fit and fit.form == SQUARE_COUNT


def test_stabilization_needed_for_long_witnesses(ns, sequences):
    # j ranges over values up to 2n, which need longer representations than n
    p = compile_formula("j < 2 * n", ns, sequences)
    raw = linrep_from_dfa(p.dfa, ["j"], "n", stabilize=False)
    fixed = stabilize_leading_zeros(raw)
    assert fixed.eval_range(300) == [2 * n for n in range(300)]


def test_annihilation():
    eye = np.eye(4, dtype=np.int64)
    assert annihilates(x - Polynomial((1,)), eye)
    assert not annihilates(x, eye)
    nil = np.diag([1, 1, 1], k=1)
    assert annihilates(x ** 4, nil) and not annihilates(x ** 3, nil)


def test_polynomial_arithmetic():
    p = (x - Polynomial((1,))) ** 2 * x ** 2
    assert p.degree == 4
    assert p(1) == 0 and p(2) == 4
    assert str(Polynomial((-13, 22, -12, 2))) == "2x^3 - 12x^2 + 22x - 13"


def test_fit_constant():
    fit = fit_closed_form({n: 5 for n in range(3, 40)})
    assert fit and fit.form == ClosedForm.of({"1": 5})


def test_fit_failure_is_reported():
    vals = {n: n * n for n in range(3, 40)}
    fit = fit_closed_form(vals)
    assert not fit and fit.message


def test_closed_form_folds_residues():
    a = ClosedForm.of({"[n = 0 mod 3]": 2, "[n = 1 mod 3]": 2, "[n = 2 mod 3]": 2, "n": 1})
    assert a == ClosedForm.of({"1": 2, "n": 1})
    assert a(10) == 12

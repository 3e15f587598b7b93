"""The theorem catalogue and its runner (fast cases; the full run is in the acceptance suite)."""
import dataclasses

from tribauto.corpus import (CASES, CASES_BY_ID, CaseContext, MatchesRegex, abelian_formulas,
                             format_table, run_all, run_case)
from tribauto.corpus.oracles import parikh_table


def test_catalogue_shape():
    assert [c.id for c in CASES] == list(range(1, 18))
    assert len({c.name for c in CASES}) == 17
    for c in CASES:
        names = [n for n, _ in c.queries]
        assert len(names) == len(set(names))


def test_square_orders_case():
    rep = run_case(3)
    assert rep.passed, format_table([rep])
    assert rep.line() == "3 pass"


def test_corrupted_regex_fails_with_witness():
    case = CASES_BY_ID[3]
    broken = dataclasses.replace(case, checks=(MatchesRegex("squares", "10*+1110*"),))
    rep = run_case(broken, CaseContext())
    assert not rep.passed and rep.witness is not None
    assert rep.line().startswith("3 fail ")


def test_errors_are_reported_not_raised():
    case = dataclasses.replace(CASES_BY_ID[1], queries=(("aperiodic", "p >= 1 & (("),))
    rep = run_case(case, CaseContext())
    assert not rep.passed and rep.error


def test_budget_failure_is_reported():
    rep = run_case(2, CaseContext(budget=100))
    assert not rep.passed and rep.error.startswith("resource limit")


def test_run_all_subset_sorted():
    reps = run_all(ids=[4, 1])
    assert [r.case_id for r in reps] == [1, 4]
    assert all(r.passed for r in reps)
    table = format_table(reps, times=False)
    assert table.splitlines()[-1] == "2/2 cases pass"


def test_skip_slow_selection():
    reps = run_all(skip_slow=True, ids=[7, 16])
    assert [r.case_id for r in reps] == [16]


def test_abelian_small():
    assert (abelian_formulas(3000) == parikh_table(3000)).all()

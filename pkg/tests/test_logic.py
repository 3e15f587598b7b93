"""Query parsing and compilation to automata."""
import re

import pytest

from tribauto.automata import is_empty, language_equal, reorder
from tribauto.logic import (Add, And, Atom, Call, CompileError, Exists, Forall, Implies, Index, Mul,
                            Not, Or, QuerySyntaxError, Sub, Var, compile_formula, free_var_order,
                            free_vars, parse, parse_term, show)

APERIODIC = "p >= 1 & En Ai i >= n => TR[i] = TR[i + p]"
SQUARES = "n > 0 & Ei Aj (i <= j & j < i + n) => TR[j] = TR[j + n]"


@pytest.fixture(scope="module")
def compile_(ns, sequences):
    def run(text, predicates=None):
        return compile_formula(text, ns, sequences, predicates=predicates)
    return run


# -- parsing -----------------------------------------------------------------

def test_precedence_and_scope():
    f = parse(APERIODIC)
    assert isinstance(f, And)
    assert isinstance(f.right, Exists) and f.right.vars == ("n",)
    body = f.right.body
    assert isinstance(body, Forall) and isinstance(body.body, Implies)
    assert isinstance(body.body.left, Atom) and body.body.left.op == ">="
    right = body.body.right
    assert isinstance(right.left, Index) and right.right == Index("TR", Add(Var("i"), Var("p")))


def test_scaled_term():
    assert parse_term("3 * n") == Mul(3, Var("n"))
    assert parse_term("i + 3 * n") == Add(Var("i"), Mul(3, Var("n")))
    assert parse_term("i - 1 - j") == Sub(Sub(Var("i"), parse_term("1")), Var("j"))


@pytest.mark.parametrize("text", ["x + (", "x < ", "Ex", "x * y = 1", "TR[i = 1", "x @ y"])
def test_syntax_errors(text):
    with pytest.raises(QuerySyntaxError) as e:
        parse(text)
    assert 0 <= e.value.pos <= len(text)


def test_unknown_sequence_rejected():
    with pytest.raises(QuerySyntaxError):
        parse("XX[i] = 0", sequences=["TR"])


def test_connective_precedence():
    f = parse("a = 0 | b = 0 & c = 0 => d = 0 <=> e = 0")
    assert show(f) == "a = 0 | b = 0 & c = 0 => d = 0 <=> e = 0"
    assert isinstance(f.left.left, Or) and isinstance(f.left.left.right, And)


def test_implication_is_right_associative():
    f = parse("a = 0 => b = 0 => c = 0")
    assert isinstance(f.right, Implies)


def test_negation_binds_tightest():
    f = parse("~a = 0 & b = 0")
    assert isinstance(f, And) and isinstance(f.left, Not)


@pytest.mark.parametrize("text", [APERIODIC, SQUARES,
                                  "Ei i >= n & Aj j < n => TR[i + j] = TR[i - 1 - j]",
                                  "p >= 1 & $run(n, p) & ~$run(n + 1, p)"])
def test_show_round_trip(text):
    f = parse(text)
    assert parse(show(f)) == f


def test_free_variables():
    f = parse(SQUARES)
    assert free_vars(f) == {"n"}
    assert free_var_order(parse("y < x & z = x")) == ["y", "x", "z"]


def test_call_syntax():
    f = parse("$run(n + 1, p)")
    assert f == Call("run", (Add(Var("n"), parse_term("1")), Var("p")))
    assert str(f) == "$run(n + 1, p)"


# -- compilation ---------------------------------------------------------------

def test_aperiodic_log(compile_):
    p = compile_(APERIODIC)
    assert p.free_tracks == ("p",) and is_empty(p.dfa)
    counts = {e.text: e.states for e in p.log}
    assert counts["p >= 1"] == 5
    assert counts["i >= n"] == 13
    assert counts["i + p"] == 150
    assert counts["TR[i] = TR[i + p]"] == 102
    assert counts["Ai i >= n => TR[i] = TR[i + p]"] == 4
    assert counts["En Ai i >= n => TR[i] = TR[i + p]"] == 2


def test_squares_log(compile_):
    p = compile_(SQUARES)
    counts = [e.states for e in p.log]
    assert counts[:7] == [5, 13, 150, 229, 241, 150, 102]
    assert counts[-3:] == [11, 4, 4]
    assert [v[0] for v in p.values(6)] == [1, 2, 3, 4, 6, 7]


def test_log_format(compile_):
    p = compile_(APERIODIC)
    lines = p.format_log(times=False).splitlines()
    assert len(lines) == len(p.log) + 1
    for k, line in enumerate(lines[:-1]):
        assert re.fullmatch(" " * k + r"\S.* with \d+ states, in 0ms", line)
    assert lines[-1] == "overall time: 0ms"
    assert re.fullmatch(r"overall time: \d+ms", p.format_log().splitlines()[-1])


def test_every_subformula_logged_once(compile_):
    p = compile_("x < y & y < z")
    assert [e.text for e in p.log] == ["x < y", "y < z", "x < y & y < z"]


def test_reflexive_equality(compile_, ns):
    p = compile_("x = x")
    assert language_equal(p.dfa, ns.valid_words(("x",)))


def test_triple_scaling(compile_):
    p = compile_("y = 3 * n")
    assert set(p.values_up_to(6000)) == {(3 * n, n) for n in range(2001)}


def test_self_difference(compile_):
    p = compile_("y = x - x")
    assert set(p.values_up_to(100)) == {(0, x) for x in range(101)}


def test_difference_is_relational(compile_):
    p = compile_("z = x - y")
    assert set(p.values_up_to(40)) == {(x - y, x, y) for x in range(41) for y in range(x + 1)}


def test_sequence_self_equality(compile_, ns):
    p = compile_("TR[i] = TR[i]")
    assert language_equal(p.dfa, ns.valid_words(("i",)))


def test_letter_comparison(compile_, word):
    p = compile_("TR[i] = 2")
    got = {v[0] for v in p.values_up_to(500)}
    assert got == {i for i in range(501) if word[i] == 2}
    q = compile_("TR[i] < 1")
    assert {v[0] for v in q.values_up_to(500)} == {i for i in range(501) if word[i] == 0}


def test_letter_order_between_positions(compile_, word):
    p = compile_("TR[i + t] < TR[i + j + t]")
    got = set(p.values_up_to(60))
    want = {(i, t, j) for i in range(61) for t in range(61) for j in range(61)
            if word[i + t] < word[i + j + t]}
    assert got == want


def test_unknown_letter(compile_):
    with pytest.raises(CompileError):
        compile_("TR[i] = 3")


def test_forall_is_not_exists_not(compile_):
    a = compile_("Ax x < y => TR[x] != TR[y]")
    b = compile_("~(Ex x < y & TR[x] = TR[y])")
    assert language_equal(a.dfa, b.dfa)


def test_variable_order_independence(compile_):
    a = compile_("x < y & TR[x] = TR[y]")
    b = compile_("TR[y] = TR[x] & x < y")
    assert a.free_tracks == ("x", "y") and b.free_tracks == ("y", "x")
    assert language_equal(a.dfa, reorder(b.dfa, a.dfa.tracks))
    assert set(a.values_up_to(50)) == {(y, x) for x, y in b.values_up_to(50)}


def test_predicate_calls(compile_):
    run = compile_("Ei Au (u >= i & u < i + n) => TR[u] = TR[u + p]")
    assert run.free_tracks == ("n", "p")
    maxrun = compile_("p >= 1 & $run(n, p) & ~$run(n + 1, p)", {"run": run})
    assert maxrun.free_tracks == ("p", "n")
    assert maxrun.accepts(1, 1)  # the longest run of equal letters at distance 1 has length 1
    assert not maxrun.accepts(1, 2)


def test_call_arguments_follow_callee_order(compile_):
    lt = compile_("a < b")
    swapped = compile_("$lt(y, x)", {"lt": lt})
    # free order is (y, x), so the call reads y < x
    assert swapped.accepts(3, 5) and not swapped.accepts(5, 3)


def test_call_errors(compile_):
    lt = compile_("a < b")
    with pytest.raises(CompileError):
        compile_("$nope(x)", {"lt": lt})
    with pytest.raises(CompileError):
        compile_("$lt(x)", {"lt": lt})


def test_accepts_by_name(compile_):
    p = compile_("x + 1 = y")
    assert p.accepts(3, 4) and p.accepts(x=3, y=4) and not p.accepts(y=3, x=4)


def test_closed_formula_truth(compile_):
    assert compile_("Ex x > 5").accepts() is True
    assert compile_("Ax x > 5").accepts() is False


def test_budget_exceeded_is_reported(ns, sequences):
    from tribauto.automata import ResourceError
    with pytest.raises(ResourceError) as e:
        compile_formula(SQUARES, ns, sequences, budget=50)
    assert e.value.label

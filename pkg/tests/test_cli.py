"""Command-line sessions, scripts and exit codes."""
import io
import re
import subprocess
import sys

import pytest

from tribauto.automata import loads
from tribauto.cli import EXIT_ERROR, EXIT_FAIL, EXIT_OK, Session, main, run_lines
from tribauto.enumeration import LinRep
from tribauto.numeration import builtin_path

SQUARES = "def sq := n > 0 & Ei Aj (i <= j & j < i + n) => TR[j] = TR[j + n]"


def _session(**kw):
    out = io.StringIO()
    return Session(out=out, times=False, **kw), out


def test_define_and_enumerate():
    s, out = _session()
    assert run_lines(s, [SQUARES, "enumerate sq 6"]) == EXIT_OK
    text = out.getvalue()
    assert "overall time: 0ms" in text
    assert "sq(n): 4 states" in text
    assert text.strip().splitlines()[-6:] == ["1", "2", "3", "4", "6", "7"]


def test_closed_query_reports_truth():
    s, out = _session()
    run_lines(s, ["def t := Ex x > 5"])
    assert out.getvalue().rstrip().endswith(", true")


def test_comments_and_blank_lines():
    s, out = _session()
    assert run_lines(s, ["# nothing", "", "   "]) == EXIT_OK
    assert out.getvalue() == ""


def test_syntax_error_exit_code(capsys):
    s, _ = _session()
    assert run_lines(s, ["def bad := x + ("]) == EXIT_ERROR
    assert "line 1" in capsys.readouterr().err


def test_unknown_command(capsys):
    s, _ = _session()
    assert run_lines(s, ["frobnicate"]) == EXIT_ERROR


def test_budget_error_names_subexpression(capsys):
    s, _ = _session(budget=50)
    assert run_lines(s, [SQUARES]) == EXIT_ERROR
    assert "while building" in capsys.readouterr().err


def test_quit_stops():
    s, out = _session()
    assert run_lines(s, ["quit", "frobnicate"]) == EXIT_OK


def test_exports(tmp_path):
    s, _ = _session()
    dot, aut, lr = tmp_path / "sq.dot", tmp_path / "sq.aut", tmp_path / "occ.lr"
    lines = [SQUARES, f"export dot sq {dot}", f"export aut sq {aut}",
             "def lt := i < n", "count lt by n", f"export linrep lt {lr}",
             f"export dot TR {tmp_path / 'tr.dot'}"]
    assert run_lines(s, lines) == EXIT_OK
    assert dot.read_text().startswith("digraph sq")
    assert loads(aut.read_text()).num_states == 4
    assert LinRep.loads(lr.read_text()).eval_range(5) == [0, 1, 2, 3, 4]
    assert len(re.findall(r"\d/\d", (tmp_path / "tr.dot").read_text())) == 3


def test_count_command():
    s, out = _session()
    run_lines(s, ["def lt := i < n", "count lt by n"])
    assert "first values: 0 1 2 3 4 5 6 7 8 9 10 11" in out.getvalue()


def test_count_needs_free_track(capsys):
    s, _ = _session()
    assert run_lines(s, ["def lt := i < n", "count lt by q"]) == EXIT_ERROR


def test_seq_map_and_morphic():
    s, out = _session()
    lines = ["seq C map TR 0->0,1->1,2->1", "def c := C[n] = 1 & C[n + 1] = 1",
             "seq D morphic 0->01 1->02 2->0 coding 0->1 1->0 2->0"]
    assert run_lines(s, lines) == EXIT_OK
    assert "C: 2 states" in out.getvalue()
    assert s.sequences["D"].num_states == 2


def test_load_numeration():
    s, out = _session()
    assert run_lines(s, [f"load {builtin_path('base2')}", "def e := x + x = 6",
                         "enumerate e 3"]) == EXIT_OK
    assert out.getvalue().strip().endswith("3")


def test_corpus_command():
    s, out = _session()
    assert run_lines(s, ["corpus run 1 16"]) == EXIT_OK
    lines = out.getvalue().splitlines()
    assert lines[:2] == ["1 pass", "16 pass"]
    assert lines[-1] == "2/2 cases pass"


def test_main_script(tmp_path, capsys):
    script = tmp_path / "q.txt"
    script.write_text(SQUARES + "\nenumerate sq 3\n")
    assert main([str(script), "--no-times"]) == EXIT_OK
    first = capsys.readouterr().out
    assert main([str(script), "--no-times"]) == EXIT_OK
    assert capsys.readouterr().out == first


def test_main_empty_script(tmp_path):
    script = tmp_path / "empty.txt"
    script.write_text("")
    assert main([str(script)]) == EXIT_OK


def test_main_missing_file():
    assert main(["/nonexistent/script.txt"]) == EXIT_ERROR


def test_main_execute(capsys):
    assert main(["-e", "def t := Ax x >= 0", "--no-times"]) == EXIT_OK
    assert "true" in capsys.readouterr().out


def test_failing_case_sets_exit_code(monkeypatch):
    from tribauto.corpus import cases
    broken = cases.TheoremCase(1, "broken", "a failing check", (),
                               (cases.Custom("never", lambda ctx: (False, 0, "")),))
    monkeypatch.setattr(cases, "CASES", (broken,))
    s, _ = _session()
    assert run_lines(s, ["corpus run"]) == EXIT_FAIL


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tribauto.cli", "-e", "def t := Ex x > 1",
                           "--no-times"], capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0 and "true" in proc.stdout

import sys
from pathlib import Path

import pytest

from tribauto.corpus import CaseContext
from tribauto.numeration import tribonacci_system
from tribauto.word import binary_dfao, tribonacci_dfao, tribonacci_word

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def ns():
    return tribonacci_system()


@pytest.fixture(scope="session")
def tr():
    return tribonacci_dfao()


@pytest.fixture(scope="session")
def sequences():
    return {"TR": tribonacci_dfao(), "B": binary_dfao()}


@pytest.fixture(scope="session")
def word():
    return tribonacci_word(1 << 20)


@pytest.fixture(scope="session")
def ctx():
    """Shared compilation context so predicates are built once per session."""
    return CaseContext()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])

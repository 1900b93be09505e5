from __future__ import annotations

from pathlib import Path

import pytest

from mulnet.network import read_leaf_labeled

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


def load(name: str):
    return read_leaf_labeled(fixture_text(name + ".net"))


@pytest.fixture
def nets():
    names = ["T_cherry", "T_fig4a", "T_fig4b", "T_ret", "N_ret", "T_nd", "N_nd", "diamond"]
    return {n: load(n) for n in names}


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])

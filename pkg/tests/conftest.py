from __future__ import annotations

import shutil
from pathlib import Path

import pytest

from ata.lang import parse_claim, parse_kb

ROOT = Path(__file__).resolve().parents[1]
TRAVEL = ROOT / "corpus" / "travel"

ALICE_KB = """\
name "mini"
sort Person
cond is_sick(Person) "suffers an acute illness"
cond is_relative(Person, Person) "close family member"
cond is_sister(Person, Person) "female sibling"
cond is_seriously_injured(Person) "hospitalised after an accident"
goal is_covered(Person) "costs are reimbursed"
rule r1: forall p:Person. is_sick(p) -> is_covered(p) from "Acute illness is covered." at "2.1"
"""

ALICE_CLAIM = """\
claim alice
text "Alice fell ill before the trip."
const ALICE: Person
fact f1: is_sick(ALICE)
"""


@pytest.fixture
def alice_kb():
    return parse_kb(ALICE_KB)


@pytest.fixture
def alice_claim(alice_kb):
    return parse_claim(ALICE_CLAIM, alice_kb)


@pytest.fixture(scope="session")
def travel_kb():
    return parse_kb((TRAVEL / "travel.atakb").read_text(encoding="utf-8"), "travel.atakb")


@pytest.fixture(scope="session")
def travel_rules_text():
    return (TRAVEL / "travel.atarules").read_text(encoding="utf-8")


@pytest.fixture
def z3_bin():
    path = shutil.which("z3")
    if path is None:
        try:
            import z3  # noqa: F401
        except ImportError:
            pytest.skip("no SMT solver available")
    return path


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for line in results.values():
        terminalreporter.write_line(line)

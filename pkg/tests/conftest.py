from fractions import Fraction

import pytest

from pathramsey.config import HAS_BLUE, NOT_RRR_RRB, SearchConfig
from pathramsey.search import segment_search

CFG_47 = SearchConfig(5, Fraction(4, 7), HAS_BLUE, HAS_BLUE, 9)
CFG_13 = SearchConfig(5, Fraction(1, 3), HAS_BLUE, HAS_BLUE, 4)
CFG_34 = SearchConfig(8, Fraction(3, 4), NOT_RRR_RRB, NOT_RRR_RRB, 39)


@pytest.fixture(scope="session")
def transcript47() -> str:
    return segment_search(CFG_47).transcript


@pytest.fixture(scope="session")
def transcript47_file(tmp_path_factory, transcript47):
    path = tmp_path_factory.mktemp("t47") / "lemma47.jsonl"
    path.write_text(transcript47)
    return path


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE: list[str] = []


def record(name: str, ok: bool, detail: str) -> None:
    ACCEPTANCE.append(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)

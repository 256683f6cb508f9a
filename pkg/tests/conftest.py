import pytest

from pkpoly import corpus

# criterion number -> (title, list of outcomes) filled in by test_acceptance
CRITERIA: dict[int, list] = {}


def record(number: int, title: str, ok: bool, detail: str = ""):
    CRITERIA.setdefault(number, [title, []])[1].append((ok, detail))


@pytest.fixture(scope="session")
def entries():
    return corpus.entries()


@pytest.fixture(scope="session")
def diagrams():
    return [(e, e.diagram()) for e in corpus.diagram_entries()]


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(CRITERIA):
        title, outcomes = CRITERIA[number]
        bad = [d for ok, d in outcomes if not ok]
        status = "PASS" if not bad else "FAIL"
        tail = f"  ({len(outcomes)} checks)" if not bad else f"  {'; '.join(bad)}"
        tr.write_line(f"{status} criterion {number:2d}: {title}{tail}")

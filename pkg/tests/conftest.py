import random
from pathlib import Path

import pytest
from hypothesis import settings

from disco import DiscourseRelation, RealizationType, SensePath, Span
from disco.standoff import load_corpus

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

FIXTURES = Path(__file__).parent / "fixtures"


def rel(rid, rtype, arg1, arg2, conn=(), senses=None, conn_text=None, link=None):
    """Terse relation builder; spans given as lists of (start, end) pairs."""
    rtype = RealizationType(rtype) if isinstance(rtype, str) else rtype
    if senses is None:
        senses = ["Expansion.Conjunction"] if rtype.takes_senses else []
    if conn_text is None:
        conn_text = "ve" if rtype is RealizationType.IMPLICIT else ""
    return DiscourseRelation(
        id=rid,
        realization=rtype,
        conn_span=Span(conn),
        conn_text=conn_text,
        arg1_span=Span(arg1),
        arg2_span=Span(arg2),
        senses=tuple(SensePath.parse(s) for s in senses),
        link=link,
    )


@pytest.fixture(scope="session")
def fixture_corpus():
    return load_corpus(FIXTURES / "corpus")


@pytest.fixture(scope="session")
def fixture_corpus_b():
    return load_corpus(FIXTURES / "corpus_b")


@pytest.fixture
def rng():
    return random.Random(1234)


# ---------------------------------------------------------------- acceptance verdicts

_VERDICTS = []


class Verdict:
    def __init__(self, number, title):
        self.number, self.title = number, title
        self.line = None

    def check(self, ok: bool, detail: str = "") -> None:
        status = "PASS" if ok else "FAIL"
        self.line = f"[{status}] criterion {self.number}: {self.title}" + (f" ({detail})" if detail else "")
        assert ok, self.line


@pytest.fixture
def verdict(request):
    marker = request.node.get_closest_marker("criterion")
    v = Verdict(*marker.args)
    yield v
    if v.line is None:
        v.line = f"[FAIL] criterion {v.number}: {v.title} (error before verdict)"
    _VERDICTS.append(v.line)
    print(v.line)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_VERDICTS, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)

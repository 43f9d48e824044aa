import random

import pytest

from rlz2lz import _backend, parse_text
from rlz2lz.converter import build_engine


@pytest.fixture(params=_backend.available())
def backend(request):
    return request.param


@pytest.fixture
def make_engine(backend):
    def make(text: bytes, ell: int, seed: int = 7):
        return build_engine(parse_text(text, ell), seed, backend)
    return make


@pytest.fixture
def rng():
    return random.Random(20240611)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line for an acceptance criterion and assert it."""
    def record(name: str, ok: bool, detail: str) -> None:
        line = f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

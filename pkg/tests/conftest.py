from __future__ import annotations

from pathlib import Path

import pytest

from fractalgraphs.base_graph import load_base_graph

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def cherry():
    return load_base_graph(DATA / "cherry.bg")


@pytest.fixture(scope="session")
def k22():
    return load_base_graph(DATA / "k22.bg")


@pytest.fixture(scope="session")
def star():
    return load_base_graph(DATA / "star.bg")


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance():
    """Record one pass/fail line per acceptance criterion and assert on it."""

    def record(cid: str, ok: bool, detail: str):
        line = f"criterion {cid:<3s} {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

from functools import lru_cache

import pytest

from cosetcat.double import build_double
from cosetcat.presets import preset

CRITERIA: dict[int, tuple[str, str, str]] = {}


@lru_cache(maxsize=None)
def system(name):
    return preset(name)


@lru_cache(maxsize=None)
def double(name):
    return build_double(system(name))


@lru_cache(maxsize=None)
def hopf(name):
    from cosetcat.hopf_d import build_D

    return build_D(double(name))


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    CRITERIA[number] = (title, "PASS" if ok else "FAIL", detail)


@pytest.fixture
def criterion():
    return record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        title, status, detail = CRITERIA[n]
        line = f"criterion {n:2d} {status}: {title}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)

from pathlib import Path

import pytest

from mknf.partition import Partition, parse_partition
from mknf.syntax import parse_kb

DATA = Path(__file__).resolve().parent.parent / "data"


def load(name):
    return parse_kb((DATA / name).read_text())


def load_part(name, kb):
    return parse_partition((DATA / name).read_text(), kb)


def part(kb, t, p):
    return Partition(frozenset(t), frozenset(p), kb.ka)


@pytest.fixture(scope="session")
def ex1():
    return load("example1.mknf")


@pytest.fixture(scope="session")
def ex2_o1():
    return load("example2_o1.mknf")


@pytest.fixture(scope="session")
def ex2_o2():
    return load("example2_o2.mknf")


@pytest.fixture(scope="session")
def ex3():
    return load("example3.mknf")


@pytest.fixture(scope="session")
def ex4():
    return load("example4.mknf")


@pytest.fixture(scope="session")
def ex5():
    return load("example5.mknf")


@pytest.fixture(scope="session")
def liu_you():
    return load("liu_you.mknf")


@pytest.fixture(scope="session")
def ex1_parts(ex1):
    return {k: load_part(f"example1_t{k}.part", ex1) for k in (1, 2, 3, 4)}


@pytest.fixture(scope="session")
def ex5_parts(ex5):
    return {k: load_part(f"example5_t{k}.part", ex5) for k in (1, 2, 3)}


# --- acceptance reporting: one PASS/FAIL line per criterion ----------------------

_criteria: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    n, title = mark.args
    ok = call.excinfo is None
    _criteria[n] = (title, ok, call.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        title, ok, secs = _criteria[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {title}  ({secs:.2f}s)")

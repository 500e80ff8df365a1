import pytest

from cyclodyne.cyclotomy import build_partition
from cyclodyne.ntcore import make_params

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def part_factory():
    cache = {}

    def get(p, q):
        if (p, q) not in cache:
            cache[p, q] = build_partition(make_params(p, q))
        return cache[p, q]

    return get


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

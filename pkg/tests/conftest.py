import functools

import pytest

from circorder.circular import OrderHandle
from circorder.cover import cover_for_a, trivial_cover
from circorder.pingpong import build_configuration
from circorder.words import GroupSpec

SPECS = ["0,2,2,3", "1,1,2", "0,3,2,2,2", "1,2,2,3"]


@functools.lru_cache(maxsize=None)
def config_for(spec_text):
    return build_configuration(GroupSpec.parse(spec_text))


@functools.lru_cache(maxsize=None)
def handle_for(spec_text, d=1):
    cfg = config_for(spec_text)
    spec = cfg.spec
    datum = trivial_cover(spec) if d == 1 else cover_for_a(spec, (d - 1) // spec.order_product)
    assert datum is not None and datum.d == d
    return OrderHandle(cfg, datum)


@pytest.fixture(scope="session")
def cfg023():
    return config_for("0,2,2,3")


@pytest.fixture(scope="session")
def h023():
    return handle_for("0,2,2,3", 1)


@pytest.fixture(scope="session")
def h023_7():
    return handle_for("0,2,2,3", 7)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

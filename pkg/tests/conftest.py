from __future__ import annotations

import pytest

from ringlab.construct import construct, parse_shorthand
from ringlab.ring import Subring
from ringlab.rncg import RingPair

_criteria: list[tuple[str, str]] = []


@pytest.fixture(scope="session")
def E2():
    return construct(parse_shorthand("row_ring:z2"))


@pytest.fixture(scope="session")
def T2():
    return construct(parse_shorthand("ut2:z2"))


@pytest.fixture(scope="session")
def row(T2):
    return Subring(T2, [0, 2, 4, 6])


@pytest.fixture(scope="session")
def t2_row_pair(T2, row):
    return RingPair(T2, row)


@pytest.fixture(scope="session")
def e2_pair(E2):
    return RingPair.whole(E2)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.module.__name__.endswith("test_acceptance") and rep.when == "call":
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        _criteria.append((doc, "PASS" if rep.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for doc, status in _criteria:
        terminalreporter.write_line(f"{status}  {doc}")


@pytest.fixture(scope="session")
def default_catalog():
    from ringlab.catalog import DEFAULT_CONFIG, build_catalog

    return build_catalog(DEFAULT_CONFIG)

from __future__ import annotations

import pytest

from icstruct.fixtures import FIXTURE_NAMES, corpus, load_fixture


@pytest.fixture(scope="session")
def fixtures():
    return {name: load_fixture(name) for name in FIXTURE_NAMES}


@pytest.fixture(scope="session")
def generated():
    return corpus()


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)

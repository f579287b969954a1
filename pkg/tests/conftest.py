import random

import pytest
from hypothesis import HealthCheck, settings

from tuttekit.graph import Multigraph, Symbol

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# lines collected by the acceptance suite, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


def sym(g: Multigraph) -> Multigraph:
    return g.with_weights(Symbol())


@pytest.fixture
def rng():
    return random.Random(12345)

import pytest

from lieboundary.gf import field_of_order

# fields small enough for exhaustive checks
SMALL_Q = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27]


@pytest.fixture(params=SMALL_Q, ids=lambda q: f"q{q}")
def small_field(request):
    return field_of_order(request.param)


def pytest_terminal_summary(terminalreporter):
    from tests import acceptance_log

    if acceptance_log.LINES:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_log.LINES:
            terminalreporter.write_line(line)

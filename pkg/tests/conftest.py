import pytest


@pytest.fixture
def verdicts(request):
    """Collects one pass/fail line per acceptance criterion for the terminal summary."""
    return request.config.__dict__.setdefault("_graphlink_verdicts", [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_graphlink_verdicts", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

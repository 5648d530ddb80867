import pytest


def pytest_configure(config):
    config._acceptance_lines = []


@pytest.fixture
def acceptance_line(request):
    """Write one status line to the terminal and keep it for the final summary."""
    config = request.config
    reporter = config.pluginmanager.getplugin("terminalreporter")

    def emit(text):
        config._acceptance_lines.append(text)
        if reporter is not None:
            reporter.write_line("")
            reporter.write_line(text)
    return emit


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)

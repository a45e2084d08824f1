def pytest_configure(config):
    config.acceptance = {}


def pytest_terminal_summary(terminalreporter, config):
    rows = config.acceptance
    if rows:
        terminalreporter.section("acceptance criteria")
        for n in sorted(rows):
            terminalreporter.write_line(rows[n])

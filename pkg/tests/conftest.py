def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Re-emit the acceptance-gate verdict lines after capture ends."""
    try:
        from test_acceptance import ACCEPTANCE_LINES
    except ImportError:
        return
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)

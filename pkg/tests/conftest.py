def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "relmod_acceptance", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for r in results:
        terminalreporter.write_line(r.line())

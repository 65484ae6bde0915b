"""Shared pytest plumbing.

The acceptance tests register one verdict line each; the hook below
prints them as a block after the run so the PASS/FAIL record survives
output capturing in any pytest invocation.
"""

ACCEPTANCE_VERDICTS: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_VERDICTS:
            terminalreporter.write_line(line)

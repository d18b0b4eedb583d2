"""Shared pytest configuration.

Prints one pass/fail line per acceptance criterion at the end of a run
that included tests/test_acceptance.py.
"""

ACCEPTANCE_FILE = "test_acceptance.py"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if ACCEPTANCE_FILE not in nodeid:
                continue
            if outcome == "passed" and getattr(rep, "when", "call") != "call":
                continue
            # a failure in any phase marks the criterion failed
            if outcome != "passed" or nodeid not in results:
                results[nodeid] = outcome
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid in sorted(results):
        status = "PASS" if results[nodeid] == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {nodeid.split('::')[-1]}")

import re

ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2).replace("_", " "))
    if report.when == "call" or report.failed or report.skipped:
        if report.failed:
            ACCEPTANCE[key] = "FAIL"
        else:
            ACCEPTANCE.setdefault(key, "PASS" if report.passed else "SKIP")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for (number, name), outcome in sorted(ACCEPTANCE.items()):
        terminalreporter.write_line(f"criterion {number}: {outcome}  {name}")

ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py::test_criterion_" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        ACCEPTANCE[name] = report.passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda n: int(n.split("_")[2])):
        number = name.split("_")[2]
        label = " ".join(name.split("_")[3:])
        terminalreporter.write_line("criterion %s (%s): %s" % (number, label, "PASS" if ACCEPTANCE[name] else "FAIL"))

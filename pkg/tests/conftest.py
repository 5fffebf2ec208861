"""Collects per-criterion outcomes and prints one PASS/FAIL line for each."""

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            _CRITERIA.setdefault(mark.args[0], {})[item.nodeid] = None


def pytest_runtest_logreport(report):
    for results in _CRITERIA.values():
        if report.nodeid in results and (report.when == "call" or report.failed or report.skipped):
            if results[report.nodeid] is not False:
                results[report.nodeid] = report.passed


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        outcomes = _CRITERIA[n].values()
        status = "PASS" if outcomes and all(o is True for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status}")

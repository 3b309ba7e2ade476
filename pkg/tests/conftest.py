import re

from hypothesis import settings

settings.register_profile("suite", max_examples=40, deadline=None)
settings.load_profile("suite")

_CRITERIA = {}
_NAME = re.compile(r"::test_criterion_(\d+)_")


def pytest_runtest_logreport(report):
    match = _NAME.search(report.nodeid)
    if not match or (report.when != "call" and report.passed):
        return
    number = int(match.group(1))
    _CRITERIA[number] = _CRITERIA.get(number, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if _CRITERIA[number] else 'FAIL'}")
    terminalreporter.write_line("criterion 13: excluded (documented, no tests)")

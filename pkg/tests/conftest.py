import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_CRITERIA = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rpartition("::")[2]
    if "test_acceptance.py" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    if report.when == "call" or report.failed:
        _CRITERIA[name] = _CRITERIA.get(name, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA):
        number, _, title = name[len("test_criterion_"):].partition("_")
        status = "PASS" if _CRITERIA[name] else "FAIL"
        terminalreporter.write_line(f"criterion {number} {status}  {title.replace('_', ' ')}")
    passed = sum(_CRITERIA.values())
    terminalreporter.write_line(f"{passed}/{len(_CRITERIA)} criteria pass")

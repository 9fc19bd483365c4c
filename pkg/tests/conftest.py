import re
from collections import OrderedDict

import pytest

_criteria: "OrderedDict[str, dict]" = OrderedDict()
_AC_TEST = re.compile(r"test_acceptance\.py::test_(ac\d+)_")


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    path = tmp_path / "cache"
    monkeypatch.setenv("GEODENSE_CACHE", str(path))
    return path


def pytest_runtest_logreport(report):
    match = _AC_TEST.search(report.nodeid)
    if not match:
        return
    key = match.group(1).upper()
    entry = _criteria.setdefault(key, {"passed": True, "ran": False})
    if report.when == "call":
        entry["ran"] = True
    if report.failed or (report.when == "call" and report.skipped):
        entry["passed"] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for key, label in CRITERIA.items():
        entry = _criteria.get(key)
        if entry is None:
            status = "NOT RUN"
        else:
            status = "PASS" if entry["passed"] and entry["ran"] else "FAIL"
        terminalreporter.write_line(f"{key} {status}: {label}")

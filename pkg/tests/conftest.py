import pytest

from helpers import covering

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            number, title = mark.args
            _criteria.setdefault(number, {"title": title, "tests": {}, "notes": []})
            _criteria[number]["tests"][item.nodeid] = None


def pytest_runtest_logreport(report):
    for entry in _criteria.values():
        if report.nodeid in entry["tests"]:
            prev = entry["tests"][report.nodeid]
            if report.failed:
                entry["tests"][report.nodeid] = "failed"
            elif report.skipped and prev is None:
                entry["tests"][report.nodeid] = "skipped"
            elif report.when == "call" and report.passed and prev is None:
                entry["tests"][report.nodeid] = "passed"
            if report.when == "call":
                entry["notes"] += [value for key, value in report.user_properties if key == "measured"]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        states = list(entry["tests"].values())
        if any(s == "failed" for s in states):
            verdict = "FAIL"
        elif states and all(s == "passed" for s in states):
            verdict = "PASS"
        else:
            verdict = "NOT RUN"
        line = f"criterion {number:2d}: {verdict}  {entry['title']} ({len(states)} tests)"
        if entry["notes"]:
            line += " [" + "; ".join(entry["notes"]) + "]"
        terminalreporter.write_line(line)


@pytest.fixture
def overlap():
    return covering("12 234 34", universe="1234")

from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
ZOO_PATH = ROOT / "data" / "zoo.data"

_criteria = {}


@pytest.fixture
def zoo_path():
    if not ZOO_PATH.exists():
        pytest.skip("data/zoo.data not present (see scripts/fetch_data.py)")
    return ZOO_PATH


@pytest.fixture
def criterion(request):
    """Record a one-line detail for the acceptance summary."""
    name = request.node.name
    _criteria.setdefault(name, {"outcome": "FAIL", "detail": ""})

    def note(text):
        _criteria[name]["detail"] = text

    return note


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance.py" not in report.nodeid:
        return
    entry = _criteria.setdefault(name, {"outcome": "FAIL", "detail": ""})
    if report.when == "call":
        entry["outcome"] = "PASS" if report.passed else "FAIL"
        if report.failed and not entry["detail"]:
            entry["detail"] = str(report.longrepr.reprcrash.message).splitlines()[0]
    elif report.failed:
        entry["outcome"] = "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria, key=lambda s: int(s.split("_")[2])):
        entry = _criteria[name]
        line = f"{entry['outcome']}  {name}"
        if entry["detail"]:
            line += f"  -- {entry['detail']}"
        terminalreporter.write_line(line)

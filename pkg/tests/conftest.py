import pytest

_lines: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")


@pytest.fixture
def criterion_detail(request):
    """Tests call this with a short text that ends up on the criterion's summary line."""
    notes = []
    request.node._criterion_notes = notes
    return notes.append


@pytest.hookimpl(wrapper=True)
def pytest_runtest_makereport(item, call):
    report = yield
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when not in ("setup", "call"):
        return report
    number, title = marker.args
    entry = _lines.setdefault(number, {"title": title, "passed": True, "notes": [], "ran": False})
    if report.when == "call":
        entry["ran"] = True
        entry["notes"].extend(getattr(item, "_criterion_notes", []))
    if report.failed:
        entry["passed"] = False
        entry["notes"].append(f"{item.name} failed")
    return report


def pytest_terminal_summary(terminalreporter):
    if not _lines:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_lines):
        entry = _lines[number]
        status = "PASS" if entry["passed"] and entry["ran"] else "FAIL"
        detail = "; ".join(entry["notes"])
        terminalreporter.write_line(f"criterion {number} {status}: {entry['title']}" + (f" ({detail})" if detail else ""))

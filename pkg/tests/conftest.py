"""Collects acceptance outcomes and prints one line per criterion."""

_RESULTS: dict[int, tuple[str, bool]] = {}


def pytest_runtest_setup(item):
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        item.user_properties.append(("criterion", marker.args))


def pytest_runtest_logreport(report):
    for key, (number, title) in (p for p in report.user_properties if p[0] == "criterion"):
        if report.when == "call" or report.failed:
            prev = _RESULTS.get(number, (title, True))[1]
            _RESULTS[number] = (title, prev and report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, ok = _RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}")

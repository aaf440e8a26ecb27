import pytest

_results = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion number and title")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    num, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _results[num] = (title, rep.outcome, getattr(item, "_criterion_detail", ""))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_results):
        title, outcome, detail = _results[num]
        status = "PASS" if outcome == "passed" else "FAIL"
        line = f"AC{num} {status}: {title}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)

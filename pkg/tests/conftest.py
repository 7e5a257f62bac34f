import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")
    config._criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when not in ("setup", "call"):
        return
    if report.when == "setup" and report.passed:
        return
    number, title = marker.args
    detail = ""
    if report.failed:
        detail = str(call.excinfo.value).splitlines()[0] if call.excinfo else ""
    item.config._criteria[number] = (title, report.outcome.upper(), detail)


def pytest_terminal_summary(terminalreporter, config):
    criteria = getattr(config, "_criteria", {})
    if not criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(criteria):
        title, outcome, detail = criteria[number]
        line = f"[{outcome:6}] {number}. {title}"
        if detail:
            line += f" -- {detail}"
        terminalreporter.write_line(line)
